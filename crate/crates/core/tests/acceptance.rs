//! Acceptance criteria A1–A8. Prints one line per criterion and exits
//! nonzero if any fails.

mod common;

use std::collections::BTreeSet;
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use hext::brenner::{brenner_oracle, counts, report};
use hext::corpus::{run_corpus, thread_pool, CorpusConfig};
use hext::cycles::{classify_cycle, nonzero_cycles_at, verify_kernel_generators, verify_nonzero_iff_classified, CycleClass, Enumeration};
use hext::scalar::{int, ratio, Scalar};
use hext::suite::SuiteOptions;
use hext::{HochschildExtension, Path};

use common::{example_one, example_one_trivial, example_two, names, Model};

type Check = Result<String, String>;
type Criterion = (&'static str, &'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let spent = start.elapsed();
    ensure(spent < limit, || format!("{what} took {spent:.2?}, limit {limit:?}"))
}

fn path(ext: &HochschildExtension, names: &[&str]) -> Path {
    ext.quiver().path_from_names(names).unwrap()
}

fn display(ext: &HochschildExtension, p: &Path) -> String {
    ext.quiver().path_display(p)
}

const ELEMENTARY_AT_ONE: [&str; 10] = [
    "y_z2z3·z2·z3",
    "z1·y_z3z1·z3",
    "x1·y_z3x1·z3",
    "z1·z2·y_z1z2",
    "x1·z2·y_x1z2",
    "x1·x2·y_x1x2",
    "z1·x2·y_z1x2",
    "x1·y_x4x1·x4",
    "z1·y_x4z1·x4",
    "y_x3x4·x3·x4",
];

fn example_one_reproduction() -> Check {
    let start = Instant::now();
    let ext = example_one(int(1));
    let socle = ext.algebra().socle_basis().len();
    ensure(socle == 11, || format!("socle dimension {socle}"))?;
    ensure(Model::of(&ext).socle_size() == 11, || "model socle differs".into())?;
    let q = ext.quiver();
    ensure(q.vertex_count() == 5 && q.arrow_count() == 18, || {
        format!("extension quiver has {} vertices, {} arrows", q.vertex_count(), q.arrow_count())
    })?;
    let one = q.vertex_id("1").unwrap();
    let cycles = nonzero_cycles_at(&ext, one);
    let elementary: BTreeSet<String> = cycles
        .iter()
        .filter(|(_, c)| matches!(c, CycleClass::Elementary { .. }))
        .map(|(c, _)| display(&ext, c.path()))
        .collect();
    let revived: Vec<String> = cycles
        .iter()
        .filter(|(_, c)| matches!(c, CycleClass::AlphaRevived { .. }))
        .map(|(c, _)| display(&ext, c.path()))
        .collect();
    let expected: BTreeSet<String> = ELEMENTARY_AT_ONE.iter().map(|s| s.to_string()).collect();
    ensure(cycles.len() == 11, || format!("{} non-zero cycles at 1", cycles.len()))?;
    ensure(elementary == expected, || format!("elementary cycles {elementary:?}"))?;
    ensure(revived == ["x1·x2·x3·x4"], || format!("α-revived cycles {revived:?}"))?;
    let (c, a) = counts(&ext, one);
    ensure((c, a) == (1, 1), || format!("class counts ({c}, {a})"))?;
    within(start, Duration::from_secs(1), "example one")?;
    Ok("socle 11, 18 arrows, 10 + 1 cycles at 1, one class".into())
}

fn example_two_family() -> Check {
    for m in 1..=6 {
        let start = Instant::now();
        let ext = example_two(m);
        let q = ext.quiver();
        for v in q.vertices() {
            let (c, _) = counts(&ext, v);
            let want = if q.vertex_name(v) == "5" { m } else { 1 };
            ensure(c == want, || format!("m = {m}, vertex {}: {c} classes, expected {want}", q.vertex_name(v)))?;
        }
        within(start, Duration::from_secs(1), &format!("m = {m}"))?;
    }
    Ok("card at 5 equals m for m = 1..6, 1 elsewhere".into())
}

fn convention_lock() -> Check {
    for k in [int(1), int(5), ratio(-2, 3)] {
        let ext = example_one(k.clone());
        let model = Model::of(&ext);
        let alg = ext.algebra();
        let e1 = alg.trivial_index(ext.quiver().vertex_id("1").unwrap());
        let elementary = path(&ext, &["y_z2z3", "z2", "z3"]);
        let f = ext.phi2(&elementary);
        ensure(f.evaluate_basis(e1) == int(1), || format!("φ2(y_z2z3·z2·z3)(e1) = {}", f.evaluate_basis(e1)))?;
        ensure(f.terms().count() == 1 && ext.phi1(&elementary).is_zero(), || {
            format!("Φ(y_z2z3·z2·z3) = {}", ext.display_element(&ext.phi(&elementary)))
        })?;
        let gamma = path(&ext, &["x1", "x2", "x3", "x4"]);
        let g = ext.phi2(&gamma);
        ensure(g.evaluate_basis(e1) == k, || format!("φ2(x1·x2·x3·x4)(e1) = {}, k = {k}", g.evaluate_basis(e1)))?;
        for p in [&elementary, &gamma] {
            let lib = common::to_model(&ext, &ext.phi(p));
            ensure(lib == model.phi(&names(&ext, p)), || format!("library and model disagree on Φ({})", display(&ext, p)))?;
        }
    }
    Ok("weights 1 and k for k = 1, 5, -2/3".into())
}

fn model_associativity(ext: &HochschildExtension) -> Result<usize, String> {
    let model = Model::of(ext);
    let basis = model.t_basis();
    let products: Vec<Vec<_>> = basis.iter().map(|x| basis.iter().map(|y| model.multiply(x, y)).collect()).collect();
    let mut checked = 0;
    for (i, x) in basis.iter().enumerate() {
        for (j, y) in basis.iter().enumerate() {
            for (k, z) in basis.iter().enumerate() {
                checked += 1;
                if model.multiply(&products[i][j], z) != model.multiply(x, &products[j][k]) {
                    return Err(format!("model not associative on {x:?} {y:?} {z:?}"));
                }
            }
        }
    }
    Ok(checked)
}

fn cocycle_identity() -> Check {
    let start = Instant::now();
    let ext = example_one(int(1));
    let identity = ext.verify_cocycle_identity();
    ensure(identity.passed() && identity.triples_checked == 23 * 23 * 23, || format!("{identity:?}"))?;
    let assoc = ext.verify_associativity();
    ensure(assoc.passed() && assoc.triples_checked == 46 * 46 * 46, || format!("{assoc:?}"))?;
    let checked = model_associativity(&ext)?;
    ensure(checked == 46 * 46 * 46, || format!("model checked {checked}"))?;
    within(start, Duration::from_secs(60), "cocycle identity")?;
    Ok(format!("{} cocycle triples, {} associativity triples", identity.triples_checked, assoc.triples_checked))
}

/// Library classification against both the library's `Φ` and the model's.
fn exhaustive_on(ext: &HochschildExtension, bound: usize) -> Result<usize, String> {
    let lib = verify_nonzero_iff_classified(ext, bound, Enumeration::Full);
    ensure(lib.passed(), || format!("{:?}", lib.mismatches.first()))?;
    let model = Model::of(ext);
    let q = ext.quiver();
    let mut checked = 0;
    for h in q.vertices() {
        let mut model_nonzero = BTreeSet::new();
        model.cycles(q.vertex_name(h), bound, &mut |p, phi| {
            checked += 1;
            if !phi.is_zero() {
                model_nonzero.insert(p.join("·"));
            }
        });
        let classified: BTreeSet<String> = q
            .enumerate_cycles_at(h, bound)
            .iter()
            .filter(|c| !classify_cycle(ext, c).is_zero())
            .map(|c| display(ext, c.path()))
            .collect();
        if classified != model_nonzero {
            let diff: Vec<_> = classified.symmetric_difference(&model_nonzero).take(3).collect();
            return Err(format!("vertex {}: classification and model differ on {diff:?}", q.vertex_name(h)));
        }
    }
    ensure(checked == lib.cycles_checked, || format!("model saw {checked} cycles, library {}", lib.cycles_checked))?;
    Ok(checked)
}

fn exhaustive_characterization() -> Check {
    let mut total = exhaustive_on(&example_one(int(1)), 7).map_err(|e| format!("example one: {e}"))?;
    for m in 1..=3 {
        total += exhaustive_on(&example_two(m), 7).map_err(|e| format!("example two, m = {m}: {e}"))?;
    }
    Ok(format!("{total} cycles of length ≤ 7"))
}

fn kernel_on(ext: &HochschildExtension) -> Result<usize, String> {
    let model = Model::of(ext);
    let q = ext.quiver();
    let mut pairs = 0;
    for h in q.vertices() {
        let lib = verify_kernel_generators(ext, h);
        ensure(lib.passed(), || format!("vertex {}: {:?}", q.vertex_name(h), lib.violations.first()))?;
        let cycles = nonzero_cycles_at(ext, h);
        let images: Vec<_> = cycles.iter().map(|(c, _)| model.phi(&names(ext, c.path()))).collect();
        let weights: Vec<Scalar> = cycles.iter().map(|(_, class)| class.weight().unwrap().clone()).collect();
        for i in 0..cycles.len() {
            for j in i..cycles.len() {
                pairs += 1;
                let combination = model.sub(&model.scale(&images[i], &weights[j]), &model.scale(&images[j], &weights[i]));
                ensure(combination.is_zero(), || {
                    format!("w(C′)C − w(C)C′ ≠ 0 for {} and {}", display(ext, cycles[i].0.path()), display(ext, cycles[j].0.path()))
                })?;
            }
        }
    }
    Ok(pairs)
}

fn kernel_generators() -> Check {
    let mut pairs = kernel_on(&example_one(int(1))).map_err(|e| format!("example one: {e}"))?;
    for m in 1..=3 {
        pairs += kernel_on(&example_two(m)).map_err(|e| format!("example two, m = {m}: {e}"))?;
    }
    Ok(format!("{pairs} pairs"))
}

fn oracle_on(ext: &HochschildExtension, label: &str) -> Result<(), String> {
    let q = ext.quiver();
    for h in q.vertices() {
        let (c, _) = counts(ext, h);
        let o = brenner_oracle(ext, h);
        ensure((o.max_total, o.min_blocks) == (c, c), || {
            format!("{label}, vertex {}: oracle ({}, {}), classes {c}", q.vertex_name(h), o.max_total, o.min_blocks)
        })?;
    }
    Ok(())
}

fn oracle_agreement() -> Check {
    oracle_on(&example_one(int(1)), "example one")?;
    for m in 1..=6 {
        oracle_on(&example_two(m), &format!("example two, m = {m}"))?;
    }
    let start = Instant::now();
    let config = CorpusConfig::default();
    let summary = thread_pool().install(|| run_corpus(&config, SuiteOptions::default())).map_err(|e| e.to_string())?;
    let failed: Vec<_> = summary.instances.iter().filter(|o| !o.passed).map(|o| (o.index, &o.failed_checks)).collect();
    ensure(summary.instances.len() >= 100 && failed.is_empty(), || format!("corpus failures {failed:?}"))?;
    within(start, Duration::from_secs(600), "corpus")?;
    Ok(format!("examples and {} corpus instances in {:.1?}", summary.instances.len(), start.elapsed()))
}

fn k_invariance() -> Check {
    let base = report(&example_one(int(1)));
    let other = report(&example_one(ratio(7, 3)));
    ensure(base == other, || "reports differ between k = 1 and k = 7/3".into())?;
    let trivial = example_one_trivial();
    let one = trivial.quiver().vertex_id("1").unwrap();
    let cycles = nonzero_cycles_at(&trivial, one);
    ensure(cycles.len() == 10 && cycles.iter().all(|(_, c)| matches!(c, CycleClass::Elementary { .. })), || {
        format!("trivial mode: {} cycles at 1", cycles.len())
    })?;
    let (c, _) = counts(&trivial, one);
    ensure(c == 1, || format!("trivial mode: {c} classes at 1"))?;
    Ok("report invariant in k; trivial mode gives 10 elementary cycles, one class".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("A1", "example one reproduction", example_one_reproduction),
        ("A2", "example two family", example_two_family),
        ("A3", "convention lock", convention_lock),
        ("A4", "cocycle identity and associativity", cocycle_identity),
        ("A5", "non-zero iff classified, exhaustive", exhaustive_characterization),
        ("A6", "kernel generators", kernel_generators),
        ("A7", "oracle agreement", oracle_agreement),
        ("A8", "k-invariance and trivial baseline", k_invariance),
    ];
    let mut failures = 0;
    for (id, title, check) in criteria {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let spent = start.elapsed();
        match outcome {
            Ok(detail) => println!("{id} PASS {title}: {detail} ({spent:.2?})"),
            Err(why) => {
                failures += 1;
                println!("{id} FAIL {title}: {why} ({spent:.2?})");
            }
        }
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
