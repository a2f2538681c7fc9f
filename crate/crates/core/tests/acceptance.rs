//! Acceptance criteria, one line each. Run with
//! `cargo test -p motivic-density --test acceptance`.

use std::time::{Duration, Instant};

use motivic_density::blowup::random_sequence;
use motivic_density::density::{curve_density, surface_density, CurveBranchData};
use motivic_density::mring::{geometric_factor, parse_class, ClassSymbol, MotivicClass, Poly, RationalFunctionL, Q};
use motivic_density::oracle::{cross_check, mean_value_curve, theta_curve, mean_value_surface, mean_value_surface_with_modulus, OracleParams};
use motivic_density::resgraph::{parse_graph, period, random_admissible, DualGraph};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const PRECISION: u64 = 12;
const WINDOW: usize = 3;
const RANDOM_GRAPHS: usize = 120;
const RANDOM_CURVES: usize = 500;
const BLOWUP_SEQUENCES: u64 = 500;
const BLOWUP_STEPS: usize = 30;
const RING_CHECKS: usize = 10_000;
const GEOMETRIC_PRECISION: u64 = 20;

fn fixture(name: &str) -> DualGraph {
    let path = format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    parse_graph(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn params() -> OracleParams {
    OracleParams {
        precision: PRECISION,
        window: WINDOW,
        n_max_multiplier: 60,
    }
}

fn ratio(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok { Ok(()) } else { Err(msg()) }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed < limit, || format!("took {elapsed:.2?}, limit {limit:?}"))
}

fn e8_exact() -> Outcome {
    let g = fixture("e8.graph");
    let t = Instant::now();
    let d = surface_density(&g).map_err(|e| e.to_string())?;
    let elapsed = t.elapsed();
    ensure(d == MotivicClass::rational(ratio(1, 2)), || format!("got {d}"))?;
    within(elapsed, Duration::from_millis(100))?;
    Ok(format!("{d} in {elapsed:.2?}"))
}

fn smooth_normalization() -> Outcome {
    let g = fixture("smooth.graph");
    let t = Instant::now();
    let d = surface_density(&g).map_err(|e| e.to_string())?;
    let elapsed = t.elapsed();
    ensure(d == MotivicClass::one(), || format!("got {d}"))?;
    within(elapsed, Duration::from_millis(100))?;
    Ok(format!("{d} in {elapsed:.2?}"))
}

/// Mean over one period of `#{i : N_i | n}`, by direct counting.
fn counted_curve_mean(mults: &[u64]) -> BigRational {
    let e = mults.iter().fold(1u64, |a, &m| a.lcm(&m));
    let hits: u64 = (1..=e).map(|n| mults.iter().filter(|&&m| n % m == 0).count() as u64).sum();
    BigRational::new(BigInt::from(hits), BigInt::from(e))
}

fn curve_formula() -> Outcome {
    let t = Instant::now();
    let cusp = curve_density(&CurveBranchData::new(vec![2]).unwrap());
    ensure(cusp == ratio(1, 2), || format!("cusp gave {cusp}"))?;
    let mut lists: Vec<Vec<u64>> = Vec::new();
    for a in 1..=12 {
        lists.push(vec![a]);
        for b in 1..=12 {
            lists.push(vec![a, b]);
            for c in 1..=12 {
                lists.push(vec![a, b, c]);
            }
        }
    }
    let exhaustive = lists.len();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..RANDOM_CURVES {
        let len = rng.gen_range(1..=4);
        lists.push((0..len).map(|_| rng.gen_range(1..=24)).collect());
    }
    for m in &lists {
        let b = CurveBranchData::new(m.clone()).unwrap();
        let formula = curve_density(&b);
        let oracle = mean_value_curve(&b).mean;
        let counted = counted_curve_mean(m);
        ensure(formula == oracle && oracle == counted, || {
            format!("{m:?}: formula {formula}, oracle {oracle}, count {counted}")
        })?;
        if m.len() <= 2 {
            let rep = mean_value_curve(&b);
            for n in 1..=rep.period.min(24) {
                let theta = theta_curve(&b, n);
                ensure(theta == MotivicClass::rational(rep.limits[(n % rep.period) as usize].clone()), || {
                    format!("{m:?}: theta at n = {n} is {theta}")
                })?;
            }
        }
    }
    let elapsed = t.elapsed();
    within(elapsed, Duration::from_secs(5))?;
    Ok(format!("{exhaustive} exhaustive + {RANDOM_CURVES} random lists in {elapsed:.2?}"))
}

fn oracle_matches_formula() -> Outcome {
    let t = Instant::now();
    let mut graphs = vec![("e8".to_string(), fixture("e8.graph")), ("twovertex".to_string(), fixture("twovertex.graph"))];
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    for i in 0..RANDOM_GRAPHS {
        graphs.push((format!("random #{i}"), random_admissible(&mut rng, 6, 6, i % 4 == 3)));
    }
    for (name, g) in &graphs {
        for v in g.vertices() {
            ensure(v.m <= 6 && v.q >= Rational64::one() && v.q <= Rational64::from_integer(3), || {
                format!("{name}: vertex {} outside the sampling range", v.id)
            })?;
        }
        let report = cross_check(g, &params()).map_err(|e| format!("{name}: {e}"))?;
        ensure(report.matched, || {
            format!("{name}: formula {} vs oracle {}", report.formula, report.oracle.mean)
        })?;
    }
    let elapsed = t.elapsed();
    within(elapsed, Duration::from_secs(60))?;
    Ok(format!("{} graphs at D={PRECISION}, W={WINDOW} in {elapsed:.2?}", graphs.len()))
}

fn blowup_states() -> Vec<motivic_density::blowup::BlowupState> {
    let mut states = Vec::new();
    for seed in 0..BLOWUP_SEQUENCES {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let steps = rng.gen_range(1..=BLOWUP_STEPS);
        states.extend(random_sequence(steps, &mut rng).into_iter().map(|(_, s)| s));
    }
    states
}

fn smooth_identity() -> Outcome {
    let t = Instant::now();
    let states = blowup_states();
    for (i, s) in states.iter().enumerate() {
        for row in s.rows() {
            let k = row.k.ok_or("missing discrepancy")?;
            ensure(row.q == Rational64::new(k + 1, row.m) - 1, || {
                format!("state {i}, vertex {}: q = {}, k = {k}, m = {}", row.id, row.q, row.m)
            })?;
        }
    }
    let elapsed = t.elapsed();
    within(elapsed, Duration::from_secs(5))?;
    Ok(format!("{} states from {BLOWUP_SEQUENCES} sequences in {elapsed:.2?}", states.len()))
}

fn mather_consistency() -> Outcome {
    let states = blowup_states();
    let mut vertices = 0;
    for s in &states {
        for row in s.rows() {
            let k = row.k.ok_or("missing discrepancy")?;
            ensure(row.mather_log == Rational64::from_integer(k + 1), || {
                format!("vertex {}: k^log = {}, k = {k}", row.id, row.mather_log)
            })?;
            vertices += 1;
        }
    }
    Ok(format!("{vertices} vertex checks"))
}

fn modulus_independence() -> Outcome {
    let g = fixture("e8.graph");
    let e = period(&g).unwrap();
    let base = mean_value_surface(&g, &params()).map_err(|e| e.to_string())?;
    let doubled = mean_value_surface_with_modulus(&g, &params(), 2 * e).map_err(|e| e.to_string())?;
    ensure(base.mean == doubled.mean, || format!("e: {}, 2e: {}", base.mean, doubled.mean))?;
    Ok(format!("e = {e} and 2e = {} agree: {}", 2 * e, base.mean))
}

fn twin_node_graph() -> Outcome {
    let g = fixture("twin.graph");
    let report = cross_check(&g, &params()).map_err(|e| e.to_string())?;
    let reference = parse_class("2*(1 + 4/(L + 1) + 1/(L + 1)^2)").unwrap();
    let note = if report.density == reference {
        "equals the reference value".to_string()
    } else {
        format!("reference value {} differs", reference.canonical_string())
    };
    ensure(report.matched, || {
        format!("formula {} vs oracle {}", report.formula, report.oracle.mean)
    })?;
    Ok(format!("cross-check match, density {}; {note}", report.density.canonical_string()))
}

fn random_scalar(rng: &mut ChaCha8Rng) -> RationalFunctionL {
    loop {
        let mut p = || {
            let len = rng.gen_range(0..4);
            Poly::from_coeffs((0..len).map(|_| Q::new(rng.gen_range(-5i64..=5).into(), rng.gen_range(1i64..=3).into())))
        };
        let (n, d) = (p(), p());
        if let Some(r) = RationalFunctionL::new(n, d) {
            return r.mul(&RationalFunctionL::lpow(rng.gen_range(-3..=3)));
        }
    }
}

fn random_class(rng: &mut ChaCha8Rng) -> MotivicClass {
    let mut c = MotivicClass::scalar(random_scalar(rng));
    for name in ["A", "B"] {
        if rng.gen_bool(0.5) {
            c = c.add(&MotivicClass::term(ClassSymbol::curve(name), random_scalar(rng)));
        }
    }
    c
}

fn ring_sanity() -> Outcome {
    let t = Instant::now();
    for i in 1..=6i64 {
        let trunc = geometric_factor(i).unwrap().expand(GEOMETRIC_PRECISION);
        for e in 0..=GEOMETRIC_PRECISION as i64 {
            let expect = if e % i == 0 { Q::one() } else { Q::zero() };
            ensure(trunc.coeff(&ClassSymbol::Unit, -e) == expect, || format!("i = {i}, L^-{e}"))?;
        }
        ensure(trunc.len() == GEOMETRIC_PRECISION as usize / i as usize + 1, || format!("i = {i}: extra terms"))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut checks = 0;
    while checks < RING_CHECKS {
        let (a, b, c) = (random_class(&mut rng), random_class(&mut rng), random_class(&mut rng));
        let x = MotivicClass::scalar(random_scalar(&mut rng));
        let y = MotivicClass::scalar(random_scalar(&mut rng));
        let mul = |p: &MotivicClass, q: &MotivicClass| p.mul(q).unwrap();
        let laws = [
            a.add(&b) == b.add(&a),
            a.add(&b).add(&c) == a.add(&b.add(&c)),
            a.add(&a.neg()).is_zero(),
            mul(&x, &a) == mul(&a, &x),
            mul(&mul(&x, &y), &a) == mul(&x, &mul(&y, &a)),
            mul(&x, &a.add(&b)) == mul(&x, &a).add(&mul(&x, &b)),
            mul(&x.add(&y), &a) == mul(&x, &a).add(&mul(&y, &a)),
            mul(&MotivicClass::one(), &a) == a,
            a.add(&b).expand(8) == a.expand(8).add(&b.expand(8)),
            parse_class(&a.canonical_string()).as_ref() == Ok(&a),
        ];
        for (k, ok) in laws.iter().enumerate() {
            ensure(*ok, || format!("law {k} failed for a = {a}, b = {b}, x = {x}"))?;
        }
        checks += laws.len();
    }
    let elapsed = t.elapsed();
    within(elapsed, Duration::from_secs(5))?;
    Ok(format!("geometric factors 1..6 at D={GEOMETRIC_PRECISION}, {checks} ring checks in {elapsed:.2?}"))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("E8 exact value", e8_exact),
        ("smooth normalization", smooth_normalization),
        ("curve formula", curve_formula),
        ("oracle equals formula", oracle_matches_formula),
        ("smooth discrepancy identity", smooth_identity),
        ("Mather consistency", mather_consistency),
        ("modulus independence", modulus_independence),
        ("twin-node graph", twin_node_graph),
        ("ring sanity", ring_sanity),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
