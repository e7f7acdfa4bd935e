//! Acceptance suite: one line per criterion, nonzero exit if any fails.

mod common;

use std::time::{Duration, Instant};

use proptest::strategy::Strategy;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};
use rand::{Rng, SeedableRng};

use torus_homology::algebra::{int, rat, Poly, RatFn, Rational};
use torus_homology::cherednik::{check_quasis, irreducible_character};
use torus_homology::crosscheck::{
    default_q_order, registry_key, NormalizationRegistry, REGISTRY_VARS,
};
use torus_homology::daha::{daha_at_point, daha_superpoly, homological_reduced, TorusKnot};
use torus_homology::hilbert::os_reduced;
use torus_homology::homstruct::{
    closed_form_coefficient, colored_superpoly_62_63, colored_superpoly_poly, cyclotomic_extract,
    divisibility_check, predict, verify_growth, verify_mirror, verify_self_symmetry, verify_thin,
    QuadGradedSpace, TwistFamilyKnot, Variant,
};
use torus_homology::koszul::diff::xi_image;
use torus_homology::koszul::model::{moduli_relations, u_vars};
use torus_homology::koszul::{
    apply_differential, graded_basis, potential, Differential, Element, Quotient,
};
use torus_homology::macdonald::dl::{e1_eigenvalue, laurent_vars};
use torus_homology::macdonald::sym::gram_schmidt_norm;
use torus_homology::macdonald::{
    dl_apply, macdonald_norm, macdonald_poly, DlOp, LaurentFunc, MAC_VARS,
};
use torus_homology::tableaux::partitions_of;

type Check = Result<String, String>;

fn knot(m: u32, n: u32) -> TorusKnot {
    TorusKnot::new(m, n).unwrap()
}

fn e<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|x| x.to_string())
}

fn require(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn trefoil_flagship() -> Check {
    let v = ["a", "q", "t"];
    let m = |ex: [i32; 3]| Poly::monomial(&v, ex.to_vec(), int(1));
    let printed = &(&m([2, -2, 0]) + &m([2, 2, 2])) + &m([4, 0, 3]);
    let p = e(homological_reduced(knot(2, 3)))?;
    let (ex, c) = p
        .monomial_ratio(&printed)
        .ok_or_else(|| format!("{p} is not a monomial multiple of {printed}"))?;
    Ok(format!("ratio {}", Poly::monomial(&v, ex, c)))
}

fn golden_quad31() -> Poly {
    #[derive(serde::Deserialize)]
    struct Golden {
        generators: Vec<[i32; 4]>,
    }
    let g: Golden =
        serde_json::from_str(include_str!("../data/golden/koszul_T2_3_r2.json")).unwrap();
    Poly::from_terms(
        &["a", "q", "tr", "tc"],
        g.generators.into_iter().map(|d| (d.to_vec(), int(1))),
    )
}

/// `e` is a nonzero scalar multiple of `target`.
fn proportional(e: &Element, target: &Element) -> bool {
    let (Some((m, c)), Some(t)) = (
        e.terms.iter().next(),
        target.terms.get(e.terms.keys().next().unwrap()),
    ) else {
        return false;
    };
    let _ = m;
    e.scale(&(t / c)) == *target
}

fn koszul_golden_files() -> Check {
    let mut times = Vec::new();

    let t = Instant::now();
    let b = e(graded_basis(&knot(2, 3), 1, true))?;
    let mut labels = b.labels();
    labels.sort();
    require(labels == ["1", "u2", "xi2"], || {
        format!("T(2,3) r=1 basis {labels:?}")
    })?;
    times.push(t.elapsed());

    let t = Instant::now();
    let b2 = e(graded_basis(&knot(2, 3), 2, true))?;
    require(b2.dim() == 9, || {
        format!("T(2,3) r=2 has {} generators", b2.dim())
    })?;
    let golden = golden_quad31();
    let shifted = b2.normalized_character();
    require(shifted == golden, || {
        format!("T(2,3) r=2 residual {}", &shifted - &golden)
    })?;
    require(
        b2.character().mul_monomial(&[4, -4, 0, 0], &int(1)) == golden,
        || "shift is not a^4 q^-4".into(),
    )?;
    times.push(t.elapsed());

    let t = Instant::now();
    let rel = e(moduli_relations(&knot(3, 4), 1, true))?;
    let ring = rel.ring.clone();
    let v = u_vars(3);
    let u2 = Poly::var(&v, "u2");
    let u3 = Poly::var(&v, "u3");
    let targets = [
        ring.from_poly(&(&u2 * &u3)),
        ring.from_poly(&(&u2.pow(3).scale(&rat(2, 9)) - &u3.pow(2))),
    ];
    let nonzero: Vec<&Element> = rel.even.iter().filter(|x| !x.is_zero()).collect();
    for t in &targets {
        require(nonzero.iter().any(|x| proportional(x, t)), || {
            format!("{} is not a relation", t.display(&ring))
        })?;
    }
    let mut by_targets = e(Quotient::new(ring.clone(), targets.to_vec()))?;
    let mut by_relations = e(Quotient::new(
        ring.clone(),
        nonzero.iter().map(|x| (*x).clone()).collect(),
    ))?;
    for x in &nonzero {
        require(by_targets.contains(x), || {
            format!("{} lies outside the ideal", x.display(&ring))
        })?;
    }
    for t in &targets {
        require(by_relations.contains(t), || {
            format!("{} is not generated", t.display(&ring))
        })?;
    }
    times.push(t.elapsed());

    if let Some(slow) = times.iter().find(|d| **d > Duration::from_secs(5)) {
        return Err(format!("a golden case took {slow:.2?}, bound 5 s"));
    }
    Ok(format!(
        "{{1,u2,xi2}}, 9 generators = golden, T(3,4) ideal; times {times:.2?}"
    ))
}

fn superpotential_pin() -> Check {
    let w = e(potential(&knot(3, 4), 1))?;
    let v = u_vars(3);
    let restrict = |p: &Poly| p.filter(|x| x[0] == 0);
    let d2 = restrict(&w.derivative(1));
    let d3 = restrict(&w.derivative(2));
    let u2 = Poly::var(&v, "u2");
    let u3 = Poly::var(&v, "u3");
    let e2 = &u2.pow(3).scale(&rat(-28, 243)) + &u3.pow(2).scale(&rat(14, 27));
    let e3 = (&u2 * &u3).scale(&rat(28, 27));
    require(d2 == e2, || format!("dW/du2 = {d2}"))?;
    require(d3 == e3, || format!("dW/du3 = {d3}"))?;
    Ok(format!("dW/du2 = {d2}, dW/du3 = {d3}"))
}

fn euler_characteristic() -> Check {
    let registry = NormalizationRegistry::embedded();
    let mut notes = Vec::new();
    for (m, n) in [(2, 3), (2, 5), (3, 4), (3, 5)] {
        let k = knot(m, n);
        let q_order = default_q_order(m, n);
        let hilb = e(os_reduced(k, q_order))?;
        let daha = e(homological_reduced(k))?;
        let shadow = daha.subs_monomial(
            &["a", "q"],
            &[
                (int(1), vec![1, 0]),
                (int(1), vec![0, 1]),
                (int(-1), vec![0, 0]),
            ],
        );
        let key = registry_key("daha-hilbert", k, 1);
        let stored = registry
            .get(&key)
            .ok_or_else(|| format!("registry has no {key}"))?;
        let (ex, c) = stored.as_monomial().unwrap();
        require(REGISTRY_VARS[2] == "tc" && ex[2] == 0, || {
            format!("{key} has a tc exponent")
        })?;
        let mono = Poly::monomial(&["a", "q"], ex[..2].to_vec(), c);
        let residual = &shadow - &(&mono * &hilb);
        require(residual.is_zero(), || format!("{k}: residual {residual}"))?;
        notes.push(format!("{k}:{mono}"));
    }
    Ok(notes.join(", "))
}

fn cherednik() -> Check {
    for m in [1u32, 3, 5, 7] {
        let ch = e(irreducible_character(m, 2, 8 * m as i32))?;
        require(ch.total_dim() == m as usize, || {
            format!("dim L_{{{m}/2}} = {}", ch.total_dim())
        })?;
        let mut expected = Poly::zero(&["q"]);
        for k in 0..m as i32 {
            expected.add_term(vec![2 * k - (m as i32 - 1)], int(1));
        }
        let got = ch.q_character();
        require(got == expected, || format!("L_{{{m}/2}} character {got}"))?;
    }
    let mut ratios = Vec::new();
    for m in [3u32, 5] {
        let rep = e(check_quasis(m, 2, default_q_order(m, 2)))?;
        require(rep.ratio.as_monomial().is_some(), || {
            format!("ratio {} is not a monomial", rep.ratio)
        })?;
        ratios.push(format!("T({m},2):{}", rep.ratio));
    }
    Ok(format!("dims 1,3,5,7; ratios {}", ratios.join(", ")))
}

fn symmetry() -> Check {
    let mut pairs = 0;
    for n in 2..=5u32 {
        for m in 1..n {
            let Ok(k) = TorusKnot::new(m, n) else {
                continue;
            };
            let a = e(daha_superpoly(k))?.value;
            let b = e(daha_superpoly(k.transpose()))?.value;
            require(a == b, || format!("{k} differs from its transpose"))?;
            pairs += 1;
        }
    }
    let mut rng = rand::rngs::StdRng::seed_from_u64(76);
    let (k, kt) = (knot(7, 6), knot(6, 7));
    let mut points = 0;
    let mut attempts = 0;
    while points < 20 {
        attempts += 1;
        if attempts > 200 {
            return Err("could not find 20 pole-free points".into());
        }
        let mut r = || rat(rng.gen_range(-9i64..=9), rng.gen_range(1i64..=7));
        let (a, q, t) = (r(), r(), r());
        let (Ok(x), Ok(y)) = (daha_at_point(k, &a, &q, &t), daha_at_point(kt, &a, &q, &t)) else {
            continue;
        };
        require(x == y, || {
            format!("T(7,6) and T(6,7) differ at ({a}, {q}, {t})")
        })?;
        points += 1;
    }
    Ok(format!("{pairs} symbolic pairs, 20 points for T(7,6)"))
}

fn differentials() -> Check {
    let models = [(2, 3, 1), (2, 3, 2), (3, 4, 1), (2, 5, 1), (3, 5, 1)];
    let mut applied = 0;
    for (m, n, r) in models {
        let mut b = e(graded_basis(&knot(m, n), r, true))?;
        let indices = b.ring().indices.clone();
        let mut ds: Vec<Differential> = (-1..=3).map(Differential::D).collect();
        ds.extend(indices.iter().map(|&i| Differential::Cancel(i)));
        for k in 0..r {
            ds.push(Differential::ColoredPlus(k));
            ds.push(Differential::ColoredMinus(k));
        }
        for d in ds {
            e(apply_differential(&mut b, d)).map_err(|x| format!("T({m},{n}) r={r} {d:?}: {x}"))?;
            applied += 1;
        }
    }
    let mut b = e(graded_basis(&knot(2, 3), 1, true))?;
    let h = e(apply_differential(&mut b, Differential::Cancel(2)))?;
    require(h.total == 1, || format!("canceling homology {}", h.total))?;
    let mut b = e(graded_basis(&knot(2, 3), 2, true))?;
    let h = e(apply_differential(&mut b, Differential::ColoredPlus(1)))?;
    require(h.total == 3, || format!("d+ (2)->(1) homology {}", h.total))?;
    let b = e(graded_basis(&knot(3, 4), 1, true))?;
    let ring = b.ring();
    let img = xi_image(Differential::D(2), ring, 1, 3);
    require(img == ring.u(2).mul(&ring.u(2)), || {
        format!("d2(xi3) = {}", img.display(ring))
    })?;
    Ok(format!(
        "d∘d = 0 for {applied} differentials; cancel 1, d+ 3, d2(xi3) = u2^2"
    ))
}

fn structure_suite() -> Check {
    let tilde = |r: usize| -> Result<(QuadGradedSpace, QuadGradedSpace), String> {
        let plain = e(QuadGradedSpace::from_koszul(&e(graded_basis(
            &knot(2, 3),
            r,
            true,
        ))?))?;
        let t = e(plain.regrade(Variant::Tilde))?;
        Ok((plain, t))
    };
    let (p1, t1) = tilde(1)?;
    let (p2, t2) = tilde(2)?;
    let (p3, t3) = tilde(3)?;
    let golden = e(QuadGradedSpace::from_poly(
        2,
        1,
        Variant::Plain,
        &golden_quad31(),
    ))?;
    require(p2 == golden, || {
        "r=2 data differs from the golden file".into()
    })?;
    for (r, p, t) in [(1, &p1, &t1), (2, &p2, &t2), (3, &p3, &t3)] {
        require(e(t.regrade(Variant::Plain))? == *p, || {
            format!("r={r} Q-regrading round trip fails")
        })?;
        let s = verify_self_symmetry(t);
        require(s.pass, || format!("r={r} self-symmetry: {:?}", s.offending))?;
        let th = verify_thin(t);
        require(th.pass, || format!("r={r} not thin: {:?}", th.offending))?;
    }
    let th1 = verify_thin(&t1);
    require(th1.detail == "delta = 1", || {
        format!("uncolored trefoil {}", th1.detail)
    })?;
    for (r, t) in [(2, &t2), (3, &t3)] {
        let g = verify_growth(t, &t1);
        require(g.pass, || format!("r={r} growth fails: {}", g.detail))?;
    }
    let mirror = verify_mirror(&t1, &t1);
    require(mirror.pass, || format!("mirror fails: {}", mirror.detail))?;
    Ok("r=1,2,3 symmetric, thin (δ=1 uncolored), round trip, growth; mirror on (1)=(1^1)".into())
}

fn cyclotomic() -> Check {
    for knot in [TwistFamilyKnot::K62, TwistFamilyKnot::K63] {
        let name = knot.name();
        let p1 = colored_superpoly_poly(knot, 1);
        let merged = e(torus_homology::homstruct::cyclotomic::merge_homological(
            &p1,
        ))?;
        let printed = torus_homology::homstruct::cyclotomic::uncolored_reference(knot);
        require(merged == printed, || {
            format!("{name} r=1 residual {}", &merged - &printed)
        })?;
        let base = torus_homology::homstruct::cyclotomic::at_tc_one(&p1);
        for r in 1..=3 {
            let s = e(colored_superpoly_62_63(knot, r))?;
            let at1 = torus_homology::homstruct::cyclotomic::at_tc_one(&s.poincare());
            require(at1 == base.pow(r as u32), || {
                format!("{name} r={r}: tc=1 is not the r-th power")
            })?;
        }
        let values: Vec<(usize, Poly)> = (0..=2)
            .map(|r| (r, colored_superpoly_poly(knot, r)))
            .collect();
        let mut data = e(cyclotomic_extract(name, &values))?;
        require(!data.ambiguous, || format!("{name}: ambiguous prefactor"))?;
        require(
            data.prefactor == torus_homology::homstruct::cyclotomic::closed_form_prefactor(knot),
            || format!("{name}: prefactor {}", data.prefactor),
        )?;
        for k in 0..=2 {
            require(
                data.coefficients[k] == closed_form_coefficient(knot, k),
                || format!("{name}: C_{k} differs"),
            )?;
        }
        for n in 1..=3 {
            for k in 0..=2 {
                let rep = e(divisibility_check(&data, n, k))?;
                require(rep.pass, || {
                    format!("{name}: C_{k} at a=q^{n} not divisible")
                })?;
            }
        }
        data.coefficients.push(closed_form_coefficient(knot, 3));
        let p3 = colored_superpoly_poly(knot, 3);
        require(e(predict(&data, 3))? == p3, || {
            format!("{name}: r=3 prediction differs")
        })?;
    }
    Ok(
        "6_2, 6_3: r=1 printed, growth r<=3, C_0..C_2 extracted, divisibility, r=3 re-predicted"
            .into(),
    )
}

fn random_laurent(rng: &mut rand::rngs::StdRng, n: usize) -> LaurentFunc {
    let vars = laurent_vars(n);
    let mut p = Poly::zero(&vars);
    for _ in 0..4 {
        let mut ex: Vec<i32> = (0..n).map(|_| rng.gen_range(-2..=2)).collect();
        ex.push(rng.gen_range(0..=1));
        ex.push(rng.gen_range(-1..=1));
        p.add_term(ex, Rational::from_integer(rng.gen_range(-3i64..=3).into()));
    }
    LaurentFunc::from_poly(n, p).unwrap()
}

fn word(s: &str) -> Vec<DlOp> {
    s.split_whitespace()
        .map(|w| DlOp::parse(w).unwrap())
        .collect()
}

fn macdonald() -> Check {
    let mut norms = 0;
    for k in 1..=5 {
        for l in partitions_of(k) {
            let gs = e(gram_schmidt_norm(&l))?;
            let closed = macdonald_norm(&l);
            require(gs.sub(&closed).is_zero(), || {
                format!("norm of {l}: {gs} vs {closed}")
            })?;
            norms += 1;
        }
    }
    let mut eigen = 0;
    for n in 1..=3 {
        for k in 1..=3 {
            for l in partitions_of(k).into_iter().filter(|l| l.len() <= n) {
                let m = e(LaurentFunc::from_sym(&e(macdonald_poly(&l))?, n))?;
                let mut lhs = e(LaurentFunc::from_poly(n, Poly::zero(&laurent_vars(n))))?;
                for i in 1..=n {
                    lhs = lhs.add(&e(dl_apply(&[DlOp::Y(i)], &m))?);
                }
                let ev = e(LaurentFunc::constant(
                    n,
                    &RatFn::from_poly(e1_eigenvalue(&l, n)),
                ))?;
                require(lhs == m.mul(&ev), || format!("e1(Y) on M{l}, N={n}"))?;
                eigen += 1;
            }
        }
    }
    let mut rng = rand::rngs::StdRng::seed_from_u64(10);
    let mut relations = 0;
    for _ in 0..4 {
        for n in [3, 4] {
            let f = random_laurent(&mut rng, n);
            for i in 1..n - 1 {
                let a = e(dl_apply(&word(&format!("T{} T{} T{}", i, i + 1, i)), &f))?;
                let b = e(dl_apply(
                    &word(&format!("T{} T{} T{}", i + 1, i, i + 1)),
                    &f,
                ))?;
                require(a == b, || format!("braid relation at i={i}, N={n}"))?;
                relations += 1;
            }
            if n == 4 {
                let a = e(dl_apply(&word("T1 T3"), &f))?;
                let b = e(dl_apply(&word("T3 T1"), &f))?;
                require(a == b, || "T1 and T3 do not commute".into())?;
                relations += 1;
            }
        }
        let f = random_laurent(&mut rng, 3);
        let s = e(LaurentFunc::constant(
            3,
            &RatFn::from_poly(Poly::var(&MAC_VARS, "s")),
        ))?;
        let s_inv = e(LaurentFunc::constant(
            3,
            &RatFn::from_poly(Poly::monomial(&MAC_VARS, vec![0, -1], int(1))),
        ))?;
        for i in 1..=2 {
            let t = word(&format!("T{i}"));
            let g = e(dl_apply(&t, &f))?.add(&f.mul(&s_inv));
            require(e(dl_apply(&t, &g))?.sub(&g.mul(&s)).is_zero(), || {
                format!("quadratic relation fails for T{i}")
            })?;
            relations += 1;
        }
        for (i, j) in [(1, 2), (1, 3), (2, 3)] {
            let a = e(dl_apply(&word(&format!("Y{i} Y{j}")), &f))?;
            let b = e(dl_apply(&word(&format!("Y{j} Y{i}")), &f))?;
            require(a == b, || format!("Y{i} and Y{j} do not commute"))?;
            relations += 1;
        }
    }
    Ok(format!(
        "{norms} norms, {eigen} eigenfunctions, {relations} relations on random inputs"
    ))
}

fn run_prop<S: Strategy>(
    cases: u32,
    strategy: S,
    check: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<u32, String>
where
    S::Value: std::fmt::Debug,
{
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    let mut runner =
        TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha));
    runner.run(&strategy, check).map_err(|x| x.to_string())?;
    Ok(cases)
}

fn property_suites() -> Check {
    use common::*;
    let total = run_prop(RING_CASES, ring_triple(), check_ring_axioms)?
        + run_prop(SERIES_CASES, series_case(), check_series_pow)?
        + run_prop(SEMIGROUP_CASES, coprime_pair(), check_semigroup_gaps)?
        + run_prop(SYT_CASES, small_partition(), check_syt_count)?;
    require(total == 1000, || format!("{total} cases run"))?;
    Ok(format!("{total} cases, no failures"))
}

fn main() {
    let criteria: [(&str, fn() -> Check, Option<u64>); 11] = [
        ("trefoil flagship", trefoil_flagship, Some(1)),
        ("Koszul golden files", koszul_golden_files, None),
        ("superpotential pin", superpotential_pin, None),
        (
            "cross-route Euler characteristic",
            euler_characteristic,
            Some(30),
        ),
        ("Cherednik characters", cherednik, Some(60)),
        ("m<->n symmetry", symmetry, None),
        ("differentials", differentials, None),
        ("structure suite", structure_suite, None),
        ("cyclotomic expansions", cyclotomic, None),
        ("Macdonald polynomials", macdonald, None),
        ("property suites", property_suites, None),
    ];
    let mut failed = 0;
    for (i, (name, f, bound)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let mut result = f();
        let took = t.elapsed();
        if let (Ok(_), Some(b)) = (&result, bound) {
            if took > Duration::from_secs(*b) {
                result = Err(format!("took {took:.2?}, bound {b} s"));
            }
        }
        match result {
            Ok(detail) => println!("criterion {:>2} PASS  {name} [{took:.2?}]: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name} [{took:.2?}]: {why}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
