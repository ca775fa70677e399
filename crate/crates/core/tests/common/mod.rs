//! Fixtures and an independent model of `T_α(A)` for cross-checking.
//!
//! The model works on arrow names only: a basis path is its start vertex and
//! its list of arrow names, an element is a map from such keys to rationals.
//! Nothing from the library's algebra is reused.

#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use hext::corpus::{generate_instance, CorpusConfig};
use hext::job::Mode;
use hext::scalar::{int, Scalar};
use hext::{AlgebraSpec, Cocycle, ExtensionElement, HochschildExtension, Path, Quiver, TruncatedAlgebra};

pub fn example_one_quiver() -> Quiver {
    Quiver::from_parts(
        ["1", "2", "3", "4", "5"],
        [
            ("x1", "1", "2"),
            ("x2", "2", "3"),
            ("x3", "3", "4"),
            ("x4", "4", "1"),
            ("z1", "1", "2"),
            ("z2", "2", "5"),
            ("z3", "5", "1"),
        ],
    )
    .unwrap()
}

pub fn example_two_quiver(m: usize) -> Quiver {
    let mut q = Quiver::from_parts(
        ["1", "2", "3", "4", "5"],
        [("x1", "1", "2"), ("x2", "2", "3"), ("x3", "3", "4"), ("x4", "4", "1")],
    )
    .unwrap();
    for j in 1..=m {
        q.add_arrow(&format!("z{j}"), "5", "1").unwrap();
    }
    q
}

pub fn with_gamma(q: Quiver, n: usize, gamma: &[&str], k: Scalar) -> HochschildExtension {
    let alg = TruncatedAlgebra::new(AlgebraSpec::new(q, n)).unwrap();
    let path = alg.quiver().path_from_names(gamma).unwrap();
    let c = Cocycle::from_gamma(&alg, &path, k).unwrap();
    HochschildExtension::new(alg, c)
}

pub fn example_one(k: Scalar) -> HochschildExtension {
    with_gamma(example_one_quiver(), 3, &["x1", "x2", "x3", "x4"], k)
}

pub fn example_one_trivial() -> HochschildExtension {
    HochschildExtension::new(TruncatedAlgebra::new(AlgebraSpec::new(example_one_quiver(), 3)).unwrap(), Cocycle::trivial())
}

pub fn example_two(m: usize) -> HochschildExtension {
    with_gamma(example_two_quiver(m), 3, &["x1", "x2", "x3", "x4"], int(1))
}

/// Small seeded instances from the corpus generator, in cocycle or trivial mode.
pub fn instance() -> impl proptest::strategy::Strategy<Value = HochschildExtension> {
    use proptest::prelude::*;
    let config = CorpusConfig { seed: 7, instances: 0, max_vertices: 6, max_arrows: 9, truncations: vec![3, 4] };
    (0usize..10_000, any::<bool>()).prop_map(move |(i, trivial)| {
        let job = generate_instance(&config, i);
        let job = if trivial { job.with_mode(Mode::Trivial) } else { job };
        job.build().expect("generated instances are valid")
    })
}

pub fn names(ext: &HochschildExtension, p: &Path) -> Vec<String> {
    p.arrows().iter().map(|&a| ext.quiver().arrow_name(a).to_string()).collect()
}

/// Start vertex and arrow names.
pub type Key = (String, Vec<String>);
pub type Vector = BTreeMap<Key, Scalar>;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Elem {
    pub a: Vector,
    pub f: Vector,
}

impl Elem {
    pub fn is_zero(&self) -> bool {
        self.a.is_empty() && self.f.is_empty()
    }
}

fn add_to(v: &mut Vector, key: Key, c: Scalar) {
    let entry = v.entry(key.clone()).or_insert_with(Scalar::zero);
    *entry += c;
    if entry.is_zero() {
        v.remove(&key);
    }
}

pub struct Model {
    src: HashMap<String, String>,
    tgt: HashMap<String, String>,
    arrows: Vec<String>,
    n: usize,
    gamma: Vec<String>,
    k: Scalar,
    ys: HashMap<String, Key>,
    drop_full_cycle: bool,
}

impl Model {
    /// Reads the quiver, `n` and the cocycle data off `ext`; the y-arrows are
    /// rebuilt from a socle computed here.
    pub fn of(ext: &HochschildExtension) -> Model {
        let q = ext.algebra().quiver();
        let mut m = Model {
            src: HashMap::new(),
            tgt: HashMap::new(),
            arrows: vec![],
            n: ext.algebra().n(),
            gamma: vec![],
            k: Scalar::zero(),
            ys: HashMap::new(),
            drop_full_cycle: false,
        };
        for a in q.arrows() {
            m.src.insert(a.name.clone(), q.vertex_name(a.src).to_string());
            m.tgt.insert(a.name.clone(), q.vertex_name(a.tgt).to_string());
            m.arrows.push(a.name.clone());
        }
        let c = ext.cocycle();
        if let (Some(g), Some(k)) = (c.gamma(), c.k()) {
            m.gamma = g.iter().map(|&a| q.arrow_name(a).to_string()).collect();
            m.k = k.clone();
        }
        let vertices: Vec<String> = q.vertices().map(|v| q.vertex_name(v).to_string()).collect();
        for p in m.basis(&vertices) {
            let dead = m.arrows.iter().all(|a| {
                let one = (m.src[a].clone(), vec![a.clone()]);
                m.concat(&p, &one).is_none_or(|w| w.1.len() >= m.n) && m.concat(&one, &p).is_none_or(|w| w.1.len() >= m.n)
            });
            if dead {
                assert!(!p.1.is_empty(), "isolated vertex");
                m.ys.insert(format!("y_{}", p.1.concat()), p);
            }
        }
        m
    }

    /// The same model with the full-cycle case removed from `α`.
    pub fn dropping_full_cycle(ext: &HochschildExtension) -> Model {
        Model { drop_full_cycle: true, ..Model::of(ext) }
    }

    pub fn socle_size(&self) -> usize {
        self.ys.len()
    }

    fn basis(&self, vertices: &[String]) -> Vec<Key> {
        let mut out: Vec<Key> = vertices.iter().map(|v| (v.clone(), vec![])).collect();
        let mut frontier = out.clone();
        for _ in 1..self.n {
            let mut next = vec![];
            for p in &frontier {
                for a in &self.arrows {
                    if let Some(w) = self.concat(p, &(self.src[a].clone(), vec![a.clone()])) {
                        next.push(w);
                    }
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out
    }

    fn end(&self, p: &Key) -> String {
        p.1.last().map_or_else(|| p.0.clone(), |a| self.tgt[a].clone())
    }

    fn concat(&self, p: &Key, q: &Key) -> Option<Key> {
        (self.end(p) == q.0).then(|| (p.0.clone(), p.1.iter().chain(&q.1).cloned().collect()))
    }

    fn mul_a(&self, x: &Vector, y: &Vector) -> Vector {
        let mut out = Vector::new();
        for (p, c) in x {
            for (q, d) in y {
                if let Some(w) = self.concat(p, q) {
                    if w.1.len() < self.n {
                        add_to(&mut out, w, c * d);
                    }
                }
            }
        }
        out
    }

    /// `(a·g)(x) = g(x a)`.
    fn left(&self, a: &Vector, g: &Vector) -> Vector {
        let mut out = Vector::new();
        for (p, c) in g {
            for (u, d) in a {
                if p.1.len() >= u.1.len() && p.1.ends_with(&u.1) && self.end(p) == self.end(u) {
                    let x: Key = (p.0.clone(), p.1[..p.1.len() - u.1.len()].to_vec());
                    if self.end(&x) == u.0 {
                        add_to(&mut out, x, c * d);
                    }
                }
            }
        }
        out
    }

    /// `(f·b)(x) = f(b x)`.
    fn right(&self, f: &Vector, b: &Vector) -> Vector {
        let mut out = Vector::new();
        for (p, c) in f {
            for (v, d) in b {
                if p.1.starts_with(&v.1) && p.0 == v.0 {
                    let x: Key = (self.end(v), p.1[v.1.len()..].to_vec());
                    add_to(&mut out, x, c * d);
                }
            }
        }
        out
    }

    fn alpha_paths(&self, p: &Key, q: &Key, out: &mut Vector, c: &Scalar) {
        let s = self.gamma.len();
        let Some(w) = self.concat(p, q) else { return };
        let m = w.1.len();
        if s == 0 || m < self.n || m > s || (m == s && self.drop_full_cycle) {
            return;
        }
        for i in 0..s {
            let segment: Vec<String> = (0..m).map(|j| self.gamma[(i + j) % s].clone()).collect();
            if segment != w.1 {
                continue;
            }
            let key = if m == s {
                (self.src[&self.gamma[i]].clone(), vec![])
            } else {
                let rest: Vec<String> = (m..s).map(|j| self.gamma[(i + j) % s].clone()).collect();
                (self.src[&rest[0]].clone(), rest)
            };
            add_to(out, key, c * &self.k);
        }
    }

    fn alpha(&self, x: &Vector, y: &Vector) -> Vector {
        let mut out = Vector::new();
        for (p, c) in x {
            for (q, d) in y {
                self.alpha_paths(p, q, &mut out, &(c * d));
            }
        }
        out
    }

    pub fn multiply(&self, x: &Elem, y: &Elem) -> Elem {
        let mut f = self.left(&x.a, &y.f);
        for (key, c) in self.right(&x.f, &y.a).into_iter().chain(self.alpha(&x.a, &y.a)) {
            add_to(&mut f, key, c);
        }
        Elem { a: self.mul_a(&x.a, &y.a), f }
    }

    pub fn vertex(&self, v: &str) -> Elem {
        let mut a = Vector::new();
        a.insert((v.to_string(), vec![]), Scalar::one());
        Elem { a, f: Vector::new() }
    }

    pub fn arrow(&self, name: &str) -> Elem {
        let mut e = Elem::default();
        if let Some(p) = self.ys.get(name) {
            e.f.insert(p.clone(), Scalar::one());
        } else if self.n > 1 {
            e.a.insert((self.src[name].clone(), vec![name.to_string()]), Scalar::one());
        }
        e
    }

    fn arrow_source(&self, name: &str) -> String {
        match self.ys.get(name) {
            Some(p) => self.end(p),
            None => self.src[name].clone(),
        }
    }

    /// `Φ` of a nonempty path given by arrow names.
    pub fn phi(&self, path: &[String]) -> Elem {
        let mut acc = self.vertex(&self.arrow_source(&path[0]));
        for a in path {
            acc = self.multiply(&acc, &self.arrow(a));
        }
        acc
    }

    pub fn has_arrow(&self, name: &str) -> bool {
        self.src.contains_key(name) || self.ys.contains_key(name)
    }

    fn arrow_target(&self, name: &str) -> String {
        match self.ys.get(name) {
            Some(p) => p.0.clone(),
            None => self.tgt[name].clone(),
        }
    }

    fn all_arrows(&self) -> Vec<String> {
        let mut all = self.arrows.clone();
        let mut ys: Vec<String> = self.ys.keys().cloned().collect();
        ys.sort();
        all.extend(ys);
        all
    }

    /// Every cycle at `h` of length `1..=bound` with its image, by exhaustive
    /// depth-first search.
    pub fn cycles(&self, h: &str, bound: usize, visit: &mut dyn FnMut(&[String], &Elem)) {
        let arrows = self.all_arrows();
        let mut path = vec![];
        self.walk(&arrows, h, h, bound, &mut path, &self.vertex(h), visit);
    }

    #[allow(clippy::too_many_arguments)]
    fn walk(
        &self,
        arrows: &[String],
        h: &str,
        at: &str,
        left: usize,
        path: &mut Vec<String>,
        acc: &Elem,
        visit: &mut dyn FnMut(&[String], &Elem),
    ) {
        if left == 0 {
            return;
        }
        for a in arrows.iter().filter(|a| self.arrow_source(a) == at) {
            let next = self.multiply(acc, &self.arrow(a));
            path.push(a.clone());
            let end = self.arrow_target(a);
            if end == h {
                visit(path, &next);
            }
            self.walk(arrows, h, &end, left - 1, path, &next, visit);
            path.pop();
        }
    }

    /// The basis `{(p̄, 0)} ∪ {(0, p̄*)}` of `T`.
    pub fn t_basis(&self) -> Vec<Elem> {
        let mut vertices: Vec<String> = self.src.values().chain(self.tgt.values()).cloned().collect();
        vertices.sort();
        vertices.dedup();
        let mut out = vec![];
        for p in self.basis(&vertices) {
            let mut v = Vector::new();
            v.insert(p, Scalar::one());
            out.push(Elem { a: v.clone(), f: Vector::new() });
            out.push(Elem { a: Vector::new(), f: v });
        }
        out
    }

    pub fn scale(&self, x: &Elem, c: &Scalar) -> Elem {
        let mut out = Elem::default();
        for (k, v) in &x.a {
            add_to(&mut out.a, k.clone(), v * c);
        }
        for (k, v) in &x.f {
            add_to(&mut out.f, k.clone(), v * c);
        }
        out
    }

    pub fn sub(&self, x: &Elem, y: &Elem) -> Elem {
        let mut out = x.clone();
        for (k, v) in &y.a {
            add_to(&mut out.a, k.clone(), -v.clone());
        }
        for (k, v) in &y.f {
            add_to(&mut out.f, k.clone(), -v.clone());
        }
        out
    }
}

fn key_of(ext: &HochschildExtension, index: usize) -> Key {
    let alg = ext.algebra();
    let p = alg.basis_path(index);
    let q = alg.quiver();
    (q.vertex_name(p.source()).to_string(), p.arrows().iter().map(|&a| q.arrow_name(a).to_string()).collect())
}

/// The library's element in the model's coordinates.
pub fn to_model(ext: &HochschildExtension, x: &ExtensionElement) -> Elem {
    let mut e = Elem::default();
    for (i, c) in x.a.terms() {
        add_to(&mut e.a, key_of(ext, i), c.clone());
    }
    for (i, c) in x.f.terms() {
        add_to(&mut e.f, key_of(ext, i), c.clone());
    }
    e
}
