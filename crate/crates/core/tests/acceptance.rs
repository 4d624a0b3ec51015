//! Acceptance criteria, one line per criterion. Runs as a plain binary so the lines
//! always reach the test log.

use std::time::Instant;

use carlitz::checks::shuffle_series;
use carlitz::expr::parse_targets;
use carlitz::motive::{MotiveSystem, Status};
use carlitz::relations::{mine, mine_confirmed, CertificateKind, MiningProblem, Target};
use carlitz::special::{
    anderson_thakur, chang_eval, mzv, mzv_bruteforce_oracle, omega, omega_bound, pi_carlitz, verify_at, AlphaTuple, Caps, IndexTuple,
};
use carlitz::{BiPoly, Field, Fq, FqPoly, LaurentSeries, Precision, Profile, Result};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const TIME_LIMIT_SECS: f64 = 60.0;

struct Outcome {
    ok: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Result<Outcome> {
    Ok(Outcome { ok: true, detail: detail.into() })
}

fn fail(detail: impl Into<String>) -> Result<Outcome> {
    Ok(Outcome { ok: false, detail: detail.into() })
}

fn zeta(f: &Field, w: &[u32], prec: i64) -> Result<LaurentSeries> {
    mzv(f, &IndexTuple::new(w.to_vec())?, prec, &Caps::default())
}

/// The residual is zero to at least `prec`.
fn vanishes(residual: &LaurentSeries, prec: i64) -> bool {
    residual.prec() >= Precision::Finite(prec) && residual.truncate(prec).val().is_none()
}

fn rigid_trivialization() -> Result<Outcome> {
    let cases: [(u32, &[u32]); 5] = [(2, &[1]), (3, &[1]), (3, &[1, 1]), (3, &[2]), (4, &[1, 1])];
    let (tdeg, prec) = (16, 150);
    let mut probes = 0;
    for (q, w) in cases {
        let f = Field::new(q)?;
        let idx = IndexTuple::new(w.to_vec())?;
        // α_j = H_{n_j - 1}, which is 1 here since every n_j ≤ q.
        let hs = w.iter().map(|&n| anderson_thakur(&f, n, &Caps::default()).map(|a| a.h)).collect::<Result<Vec<_>>>()?;
        if hs.iter().any(|h| !h.is_one()) {
            return fail(format!("q={q} {idx}: expected alpha = 1"));
        }
        let alphas = AlphaTuple::new(hs, idx.weights().to_vec())?;
        let sys = MotiveSystem::build_general(&f, &alphas, tdeg, prec)?;
        let r = sys.verify()?;
        if !r.passes_with(tdeg, prec) {
            return fail(format!("q={q} {idx}: status {} window t^{} w^{:?}", r.status, r.tdeg, r.w_prec));
        }
        for i in 0..sys.size() {
            for j in 0..=i {
                for m in [0, 1, tdeg / 2, tdeg] {
                    let e = match sys.psi(i, j).unwrap().coeffs().get(m).and_then(|c| c.val()) {
                        Some(v) if v != 0 => v,
                        _ => 1,
                    };
                    let mut bad = sys.clone();
                    bad.corrupt_psi(i, j, m, e, Fq::ONE)?;
                    probes += 1;
                    if bad.verify()?.status != Status::Fail {
                        return fail(format!("q={q} {idx}: corruption of Psi[{i}][{j}] at t^{m} w^{e} went unnoticed"));
                    }
                }
            }
        }
    }
    pass(format!("5 systems pass at t^16 x w^150; {probes} single-coefficient corruptions all fail"))
}

fn omega_pi_duality() -> Result<Outcome> {
    let target = 200;
    for q in [2u32, 3, 4] {
        let f = Field::new(q)?;
        let e = q as i64 - 1;
        let work = target + q as i64;
        let tdeg = (0..).find(|&m| (m + 1..m + 64).all(|i| omega_bound(q, i).at(i) - e * i as i64 >= work)).unwrap();
        let om = omega(&f, tdeg, Profile::for_eval(&f, 0, work));
        let at_theta = om.eval_at_theta_power(0, work)?;
        let prod = at_theta.mul(&pi_carlitz(&f, target));
        let diff = prod.sub(&LaurentSeries::one(&f));
        if !vanishes(&diff, target) {
            return fail(format!("q={q}: pi*Omega(theta) - 1 = {diff}"));
        }
    }
    pass("pi * Omega(theta) = 1 + O(w^200) for q = 2, 3, 4")
}

fn frobenius() -> Result<Outcome> {
    let prec = 150;
    for (q, n) in [(2u32, 1u32), (3, 1), (3, 2)] {
        let f = Field::new(q)?;
        let p = f.p();
        let lhs = zeta(&f, &[p * n], prec)?;
        let rhs = zeta(&f, &[n], prec)?.pow(p as u64);
        if !vanishes(&lhs.sub(&rhs), prec) {
            return fail(format!("q={q} n={n}: zeta(pn) != zeta(n)^p to w^{prec}"));
        }
    }
    pass("zeta(pn) = zeta(n)^p to w^150 for (q,n) = (2,1), (3,1), (3,2)")
}

fn q2_identity() -> Result<Outcome> {
    let prec = 200;
    let f = Field::new(2)?;
    let factor = LaurentSeries::from_poly(&FqPoly::from_ints(&f, &[0, 1, 1])?);
    let residual = factor.mul(&zeta(&f, &[1, 1], prec + 2)?).sub(&zeta(&f, &[2], prec)?);
    if vanishes(&residual, prec) {
        pass("(theta^2+theta) zeta(1,1) - zeta(2) = O(w^200)")
    } else {
        fail(format!("residual {residual}"))
    }
}

fn harmonic_shuffle() -> Result<Outcome> {
    let prec = 200;
    let f = Field::new(3)?;
    let z1 = zeta(&f, &[1], prec)?;
    let two = f.from_int(2);
    let residual = z1.mul(&z1).sub(&zeta(&f, &[1, 1], prec)?.scale(two)).sub(&zeta(&f, &[2], prec)?);
    if !vanishes(&residual, prec) {
        return fail(format!("value identity residual {residual}"));
    }
    if let Some((m, e)) = shuffle_series(&f, 1, 1, 16, 120)? {
        return fail(format!("series identity fails at t^{m}, w^{e}"));
    }
    pass("zeta(1)^2 - 2 zeta(1,1) - zeta(2) = O(w^200) for q=3; series identity holds through t^16")
}

fn target_fn<'a>(f: &'a Field, exprs: &'a str) -> impl Fn(i64) -> Result<Vec<Target>> + 'a {
    move |n| parse_targets(exprs)?.iter().map(|m| Ok(Target::new(m.to_string(), m.eval(f, n, &Caps::default())?))).collect()
}

fn carlitz_even() -> Result<Outcome> {
    let mut notes = Vec::new();
    for (q, n) in [(3u32, 2u32), (2, 1)] {
        let f = Field::new(q)?;
        let exprs = if n == 1 { "pi,zeta(1)".to_string() } else { format!("pi^{n},zeta({n})") };
        let prec = 100;
        let cert = mine_confirmed(&f, target_fn(&f, &exprs), 6, prec, 2 * prec)?;
        if cert.kind != CertificateKind::Kernel || !cert.all_confirmed() {
            return fail(format!("q={q} n={n}: {:?}, confirmations {:?}", cert.kind, cert.confirmations));
        }
        let rel = &cert.relations[0];
        notes.push(format!("q={q}: ({})*{} + ({})*zeta({n}) = 0", rel[0], exprs.split(',').next().unwrap(), rel[1]));
    }
    pass(format!("kernels found at D=6 and confirmed at 2N; {}", notes.join("; ")))
}

fn weight_two_dichotomy() -> Result<Outcome> {
    let exprs = "pi^2,zeta(1)^2,zeta(1,1)";
    let (d, prec) = (6, 400);
    let f4 = Field::new(4)?;
    let extra = 3 * d as i64;
    let problem = MiningProblem::new(target_fn(&f4, exprs)(prec + extra)?, d, prec)?;
    let c4 = mine(&problem)?;
    if c4.kind != CertificateKind::NoneAtBound {
        return fail(format!("q=4: expected none-at-bound, got {} relations", c4.relations.len()));
    }
    let f3 = Field::new(3)?;
    let c3 = mine_confirmed(&f3, target_fn(&f3, exprs), d, prec, 2 * prec)?;
    if c3.kind != CertificateKind::Kernel || !c3.all_confirmed() {
        return fail(format!("q=3: {:?}, confirmations {:?}", c3.kind, c3.confirmations));
    }
    let minus_two = f3.neg(f3.from_int(2));
    let Some(rel) = c3.relations.iter().find(|r| !r[1].is_zero() && r[2] == r[1].scale(minus_two)) else {
        return fail("q=3: no kernel vector of the shape zeta(1)^2 - 2 zeta(1,1) = c pi^2");
    };
    pass(format!(
        "q=4: none-at-bound at D=6, N=400; q=3: ({})*pi^2 + ({})*(zeta(1)^2 - 2 zeta(1,1)) = 0 confirmed at w^800",
        rel[0], rel[1]
    ))
}

fn anderson_thakur_contract() -> Result<Outcome> {
    let caps = Caps::default();
    for q in [2u32, 3] {
        let f = Field::new(q)?;
        for n in 1..=q {
            let h = anderson_thakur(&f, n, &caps)?;
            if h.h != BiPoly::one(&f) {
                return fail(format!("q={q} n={n}: H = {} is not 1", h.h));
            }
        }
    }
    let mut notes = Vec::new();
    for (q, n) in [(2u32, 3u32), (3, 4)] {
        let f = Field::new(q)?;
        let at = anderson_thakur(&f, n, &caps)?;
        let norm_ok = (q as usize - 1) * at.h.theta_degree().unwrap_or(0) < (n * q) as usize;
        if !verify_at(&at.h, n, 3)? || !norm_ok {
            return fail(format!("q={q} n={n}: H = {} fails the interpolation identity or the norm bound", at.h));
        }
        for twist in [0, 1] {
            let r = chang_eval(&f, &IndexTuple::single(n)?, twist, 100, &caps)?;
            if !r.agrees {
                return fail(format!("q={q} n={n} N={twist}: {:?}", r.lhs.agreement(&r.rhs)));
            }
        }
        notes.push(format!("q={q}: H_{} = {}", n - 1, at.h));
    }
    pass(format!("H = 1 for n <= q; {}; identity for i=0..3 and Chang at N=0,1 to w^100", notes.join(", ")))
}

fn oracle_equivalence() -> Result<Outcome> {
    let maxdeg = 4;
    let mut tuples: Vec<Vec<u32>> = Vec::new();
    for a in 1..=4u32 {
        tuples.push(vec![a]);
        for b in 1..=(4 - a) {
            tuples.push(vec![a, b]);
        }
    }
    let mut compared = 0;
    for q in [2u32, 3] {
        let f = Field::new(q)?;
        for w in &tuples {
            let idx = IndexTuple::new(w.clone())?;
            let prec = w[0] as i64 * (maxdeg as i64 + 1) * (q as i64 - 1);
            let oracle = mzv_bruteforce_oracle(&f, &idx, maxdeg, prec)?;
            let fast = mzv(&f, &idx, oracle.certified, &Caps::default())?;
            if !vanishes(&fast.sub(&oracle.value.truncate(oracle.certified)), oracle.certified) {
                return fail(format!("q={q} {idx}: mzv and oracle differ below w^{}", oracle.certified));
            }
            compared += 1;
        }
    }
    pass(format!("{compared} (q, tuple) pairs agree on every certified coefficient"))
}

fn planted_relations() -> Result<Outcome> {
    let mut rng = StdRng::seed_from_u64(0x5eed_ca71);
    let fields = [2u32, 3, 4, 5, 7, 8, 9];
    for trial in 0..100 {
        let q = fields[rng.gen_range(0..fields.len())];
        let f = Field::new(q)?;
        let d = rng.gen_range(0..=4usize);
        let m = rng.gen_range(1..=3usize);
        let step = q as i64 - 1;
        let lowest = -step * (3 + d as i64);
        let prec = (40 * step).max(carlitz::relations::safety_margin(q, d, m + 1, lowest));
        let work = prec + 2 * step * d as i64 + 8;
        let mut values: Vec<LaurentSeries> = (0..m)
            .map(|_| {
                let val = step * rng.gen_range(-3..=3i64);
                let terms: Vec<(i64, Fq)> = (0..(work - val) / step).map(|k| (val + step * k, f.elem(rng.gen_range(0..q)).unwrap())).collect();
                LaurentSeries::from_terms(&f, &terms, Precision::Finite(work))
            })
            .collect();
        let coeffs: Vec<FqPoly> =
            (0..m).map(|_| FqPoly::new(&f, (0..=d).map(|_| f.elem(rng.gen_range(0..q)).unwrap()).collect())).collect();
        let planted = carlitz::relations::combine(&values, &coeffs)?;
        values.push(planted.neg());
        let mut vector = coeffs;
        vector.push(FqPoly::one(&f));
        let targets = values.iter().enumerate().map(|(i, v)| Target::new(format!("v{i}"), v.clone())).collect();
        let cert = mine(&MiningProblem::new(targets, d, prec)?)?;
        if !cert.kernel_contains(&f, &vector) {
            return fail(format!("trial {trial} (q={q}, D={d}, {} targets): planted vector missing", m + 1));
        }
    }
    pass("100 planted relations (q in {2,3,4,5,7,8,9}, D <= 4) all lie in the mined kernel")
}

type Criterion = (&'static str, fn() -> Result<Outcome>);

fn main() {
    let criteria: [Criterion; 10] = [
        ("rigid analytic trivialization", rigid_trivialization),
        ("Omega/pi duality", omega_pi_duality),
        ("Frobenius relation", frobenius),
        ("q=2 identity", q2_identity),
        ("harmonic shuffle", harmonic_shuffle),
        ("Carlitz even mining", carlitz_even),
        ("weight-two dichotomy", weight_two_dichotomy),
        ("Anderson-Thakur contract", anderson_thakur_contract),
        ("oracle equivalence", oracle_equivalence),
        ("planted-relation soundness", planted_relations),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run().unwrap_or_else(|e| Outcome { ok: false, detail: format!("error: {e}") });
        let secs = start.elapsed().as_secs_f64();
        let ok = outcome.ok && secs < TIME_LIMIT_SECS;
        if !ok {
            failures += 1;
        }
        println!(
            "criterion {:>2} [{}] {name}: {} ({secs:.2}s)",
            i + 1,
            if ok { "PASS" } else { "FAIL" },
            outcome.detail
        );
    }
    println!("acceptance: {}/{} criteria pass", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
