#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use cdga_core::obstructions::{
    c_splitting_betti, fatness_weight_certificate, gysin_betti, hard_lefschetz_check, WeightVector,
};
use cdga_core::spaces::{
    blowup_cp5, blowup_cp6, catalog, cpn, is_not_sasakian, k_contact_pipeline, kodaira_thurston,
    sphere, sphere2_betti, weinstein_example, PipelineBase,
};
use cdga_core::sullivan::{minimal_model, sphere_bundle_model, verify_lemma_rel3};
use cdga_core::{
    cohomology_table, extract_ring, integer, Cdga, Element, FiniteRing, FreeAlgebra, Rational,
};
use common::{
    dense_rank, random_cdga, random_cocycle, random_element, random_minimal, random_nonzero_class4,
};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = std::result::Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(start: Instant, limit: Duration) -> std::result::Result<(), String> {
    let t = start.elapsed();
    ensure(t < limit, format!("took {t:?}, limit {limit:?}"))
}

/// Dense matrix of `d: C^p → C^{p+1}` in the canonical bases.
fn dense_d(cdga: &Cdga, p: u32) -> Vec<Vec<Rational>> {
    let source = cdga.basis(p);
    let target = cdga.basis(p + 1);
    let mut rows = vec![vec![Rational::zero(); source.len()]; target.len()];
    for (col, m) in source.iter().enumerate() {
        let dm = cdga.apply_d(&Element::from_monomial(m.clone(), integer(1)));
        for (t, c) in dm.terms() {
            let row = target
                .iter()
                .position(|x| x == t)
                .expect("d preserves the basis");
            rows[row][col] = c.clone();
        }
    }
    rows
}

fn dense_betti(cdga: &Cdga, max: u32) -> Vec<usize> {
    (0..=max)
        .map(|p| {
            let dim = cdga.basis(p).len();
            let out = if dim == 0 {
                0
            } else {
                dense_rank(dense_d(cdga, p))
            };
            let inc = if p == 0 {
                0
            } else {
                dense_rank(dense_d(cdga, p - 1))
            };
            dim - out - inc
        })
        .collect()
}

fn cpn_cohomology() -> Check {
    let start = Instant::now();
    for n in 1..=5u32 {
        let c = cpn(n).map_err(|e| e.to_string())?;
        let max = 2 * n + 1;
        let expected: Vec<usize> = (0..=max)
            .map(|p| usize::from(p % 2 == 0 && p <= 2 * n))
            .collect();
        let got = cohomology_table(&c, max)
            .map_err(|e| e.to_string())?
            .bettis();
        ensure(
            got == expected,
            format!("CP^{n}: got {got:?}, expected {expected:?}"),
        )?;
        let oracle = dense_betti(&c, max);
        ensure(
            oracle == expected,
            format!("CP^{n}: dense oracle {oracle:?}"),
        )?;
    }
    within(start, Duration::from_secs(10))?;
    Ok(format!(
        "CP^1..CP^5 agree with dense ranks in {:?}",
        start.elapsed()
    ))
}

fn kodaira_thurston_betti() -> Check {
    const DIMS: [usize; 5] = [1, 4, 6, 4, 1];
    // d(c) = ab; d(cd) = abd; everything else closed or killed.
    const RANKS: [usize; 5] = [0, 1, 1, 0, 0];
    let c = kodaira_thurston();
    for p in 0..5u32 {
        ensure(c.basis(p).len() == DIMS[p as usize], format!("dim C^{p}"))?;
        ensure(
            c.d_matrix(p).rank() == RANKS[p as usize],
            format!("rank d_{p}"),
        )?;
    }
    let hand: Vec<usize> = (0..5)
        .map(|p| DIMS[p] - RANKS[p] - if p == 0 { 0 } else { RANKS[p - 1] })
        .collect();
    let got = cohomology_table(&c, 4).map_err(|e| e.to_string())?.bettis();
    ensure(got == vec![1, 3, 4, 3, 1], format!("got {got:?}"))?;
    ensure(hand == got, format!("hand ranks give {hand:?}"))?;
    Ok("Betti (1,3,4,3,1)".into())
}

fn rel3_property() -> Check {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0003);
    let mut instances = 0;
    let mut attempts = 0;
    while instances < 60 {
        attempts += 1;
        ensure(
            attempts < 10_000,
            "too few algebras with a non-zero class in degree 4",
        )?;
        let base = random_minimal(&mut rng);
        let Some(z) = random_nonzero_class4(&base, &mut rng) else {
            continue;
        };
        let report = verify_lemma_rel3(&base, &z).map_err(|e| e.to_string())?;
        ensure(
            report.equal(),
            format!(
                "b3 {} vs {} on instance {instances}",
                report.b3_base, report.b3_extension
            ),
        )?;
        let extension = sphere_bundle_model(&base, &z, 3).map_err(|e| e.to_string())?;
        let oracle = dense_betti(&extension, 3)[3];
        ensure(
            oracle == report.b3_extension,
            format!("dense oracle b3 = {oracle}"),
        )?;
        instances += 1;
    }
    within(start, Duration::from_secs(60))?;
    Ok(format!(
        "{instances} random minimal algebras in {:?}",
        start.elapsed()
    ))
}

fn degree_two_class(ring: &FiniteRing) -> Vec<Rational> {
    ring.basis_vector(ring.degree_indices(2)[0])
}

fn known(values: &[u64]) -> Vec<Option<u64>> {
    values.iter().copied().map(Some).collect()
}

fn gysin_reproduction() -> Check {
    let s2 = extract_ring(&sphere(2).map_err(|e| e.to_string())?, 2).map_err(|e| e.to_string())?;
    let e = gysin_betti(&s2, &degree_two_class(&s2), 3).map_err(|e| e.to_string())?;
    ensure(
        e.values() == known(&[1, 0, 0, 1]).as_slice(),
        format!("S^2: {:?}", e.values()),
    )?;

    let cp2 = extract_ring(&cpn(2).map_err(|e| e.to_string())?, 4).map_err(|e| e.to_string())?;
    let e = gysin_betti(&cp2, &degree_two_class(&cp2), 5).map_err(|e| e.to_string())?;
    ensure(
        e.values() == known(&[1, 0, 0, 0, 0, 1]).as_slice(),
        format!("CP^2: {:?}", e.values()),
    )?;

    let mut rings = 0;
    for entry in catalog() {
        let cdga_core::spaces::SpaceData::Model { cdga, dimension } = entry.data else {
            continue;
        };
        let ring = extract_ring(&cdga, dimension as u32).map_err(|e| e.to_string())?;
        let zero = vec![Rational::zero(); ring.dim()];
        let top = ring.top_degree() + 1;
        let e = gysin_betti(&ring, &zero, top).map_err(|e| e.to_string())?;
        for p in 0..=top {
            let below = if p == 0 { 0 } else { ring.betti(p - 1) };
            let expected = (ring.betti(p) + below) as u64;
            ensure(
                e.get(p as usize) == Some(expected),
                format!("{} zero euler, degree {p}", entry.name),
            )?;
        }
        rings += 1;
    }
    Ok(format!(
        "S^2, CP^2 and trivial bundles over {rings} catalog rings"
    ))
}

fn lefschetz_implies_even() -> Check {
    let mut checked = 0;
    let mut odd = Vec::new();
    for entry in catalog() {
        let cdga_core::spaces::SpaceData::Model { cdga, dimension } = entry.data else {
            continue;
        };
        if dimension % 2 == 1 {
            continue;
        }
        let ring = extract_ring(&cdga, dimension as u32).map_err(|e| e.to_string())?;
        let twos = ring.degree_indices(2);
        let mut candidates: Vec<(String, Vec<Rational>)> = twos
            .iter()
            .map(|&i| (ring.basis()[i].label.clone(), ring.basis_vector(i)))
            .collect();
        if twos.len() > 1 {
            let mut sum = vec![Rational::zero(); ring.dim()];
            for (_, v) in &candidates {
                for (s, x) in sum.iter_mut().zip(v) {
                    *s += x;
                }
            }
            let label = candidates
                .iter()
                .map(|(l, _)| l.as_str())
                .collect::<Vec<_>>()
                .join(" + ");
            candidates.push((label, sum));
        }
        for (label, v) in candidates {
            let report = hard_lefschetz_check(&ring, &v).map_err(|e| e.to_string())?;
            if !report.is_lefschetz() {
                continue;
            }
            let n = report.n as usize;
            let e = gysin_betti(&ring, &v, 2 * n as u32 + 1).map_err(|e| e.to_string())?;
            for p in (1..=n + 1).step_by(2) {
                let b = e.get(p).ok_or(format!("{}: b_{p} unknown", entry.name))?;
                if b % 2 == 1 {
                    odd.push(format!("{} with v = {label}: b_{p} = {b}", entry.name));
                }
            }
            checked += 1;
        }
    }
    ensure(checked > 0, "no catalog ring satisfies hard Lefschetz")?;
    ensure(
        odd.is_empty(),
        format!(
            "{} of {checked} Lefschetz classes give an odd Betti number: {}",
            odd.len(),
            odd.join("; ")
        ),
    )?;
    Ok(format!(
        "{checked} Lefschetz classes on catalog rings give even odd-degree Betti numbers"
    ))
}

fn main_result() -> Check {
    let base = blowup_cp5();
    let weights = WeightVector::new(vec![1, 1]).map_err(|e| e.to_string())?;
    let report = k_contact_pipeline("blowup-cp5", &PipelineBase::Betti(&base), &weights, 13)
        .map_err(|e| e.to_string())?;
    ensure(
        report.dimension == 13,
        format!("dimension {}", report.dimension),
    )?;
    ensure(
        report.betti.get(3) == Some(3),
        format!("b3 {:?}", report.betti.get(3)),
    )?;
    ensure(is_not_sasakian(&report), "verdict is not negative")?;
    let fat = fatness_weight_certificate(&weights);
    ensure(
        fat.certified && fat.moment_lower_bound == integer(1),
        "fatness bound",
    )?;
    ensure(report.fatness == fat, "pipeline fatness")?;

    let args = [
        "cdga",
        "pipeline",
        "--base",
        "blowup-cp5",
        "--weights",
        "1,1",
        "--max-degree",
        "13",
    ];
    let out = cdga_cli::run(args.iter().map(|s| s.to_string()).collect());
    ensure(out.code == 1, format!("CLI exit code {}", out.code))?;
    Ok("dim 13, b3 = 3, not Sasakian, fatness bound 1, exit code 1".into())
}

fn weinstein() -> Check {
    let fibre = blowup_cp6();
    ensure(
        fibre.get(1) == Some(0) && fibre.get(3) == Some(3),
        "fibre data",
    )?;
    let direct = c_splitting_betti(&fibre, &sphere2_betti(), 3).map_err(|e| e.to_string())?;
    ensure(direct == 3, format!("c-splitting gives {direct}"))?;
    let report = weinstein_example(3).map_err(|e| e.to_string())?;
    ensure(report.betti == 3 && report.non_kahler, "weinstein report")?;
    Ok("b3 = 3".into())
}

fn degrees(c: &Cdga) -> Vec<u32> {
    let mut d: Vec<u32> = c.algebra().generators().iter().map(|g| g.degree).collect();
    d.sort_unstable();
    d
}

fn minimal_models() -> Check {
    let start = Instant::now();
    let a = FreeAlgebra::new(vec![
        ("a".to_string(), 2),
        ("b".to_string(), 4),
        ("c".to_string(), 3),
    ])
    .map_err(|e| e.to_string())?;
    let b = Cdga::free(a.clone()).gen("b").map_err(|e| e.to_string())?;
    let input =
        Cdga::new(a, vec![Element::zero(), Element::zero(), b]).map_err(|e| e.to_string())?;
    let mm = minimal_model(&input, 8).map_err(|e| e.to_string())?;
    ensure(mm.model.is_minimal().is_minimal(), "model is not minimal")?;
    ensure(mm.certificate.holds(), "certificate fails")?;
    ensure(
        mm.certificate.degrees.iter().all(|d| d.is_isomorphism()),
        "not an isomorphism in every degree",
    )?;
    let bettis = cohomology_table(&mm.model, 8)
        .map_err(|e| e.to_string())?
        .bettis();
    ensure(
        bettis == vec![1, 0, 1, 0, 1, 0, 1, 0, 1],
        format!("model Betti {bettis:?}"),
    )?;

    let mut inputs: Vec<(Cdga, u32)> = vec![
        (cpn(2).map_err(|e| e.to_string())?, 6),
        (sphere(2).map_err(|e| e.to_string())?, 5),
        (
            sphere(3)
                .map_err(|e| e.to_string())?
                .tensor(&sphere(3).map_err(|e| e.to_string())?),
            6,
        ),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0008);
    for _ in 0..5 {
        inputs.push((random_minimal(&mut rng), 5));
    }
    for (k, (c, n)) in inputs.iter().enumerate() {
        let mm = minimal_model(c, *n).map_err(|e| e.to_string())?;
        ensure(
            mm.certificate.holds(),
            format!("input {k}: certificate fails"),
        )?;
        ensure(
            degrees(&mm.model) == degrees(c),
            format!("input {k}: generator degrees differ"),
        )?;
        ensure(
            mm.morphism.linear_part_is_bijective(),
            format!("input {k}: linear part not bijective"),
        )?;
    }
    within(start, Duration::from_secs(30))?;
    Ok(format!(
        "Λ(a,b,c; dc = b) and {} minimal inputs in {:?}",
        inputs.len(),
        start.elapsed()
    ))
}

fn koszul(p: u32, q: u32) -> Rational {
    integer(if p % 2 == 1 && q % 2 == 1 { -1 } else { 1 })
}

/// One round of commutation, associativity, Leibniz and `d² = 0` checks on `c`.
fn law_round(c: &Cdga, rng: &mut ChaCha8Rng) -> std::result::Result<usize, String> {
    let deg: Vec<u32> = (0..3).map(|_| rng.gen_range(0..=4)).collect();
    let xs: Vec<Element> = deg.iter().map(|&p| random_element(c, p, 3, rng)).collect();
    let mul = |a: &Element, b: &Element| c.multiply(a, b).map_err(|e| e.to_string());
    let (x, y, z) = (&xs[0], &xs[1], &xs[2]);
    ensure(
        mul(x, y)? == mul(y, x)?.scale(&koszul(deg[0], deg[1])),
        "Koszul sign",
    )?;
    ensure(
        mul(&mul(x, y)?, z)? == mul(x, &mul(y, z)?)?,
        "associativity",
    )?;
    let sign = if deg[0] % 2 == 1 {
        integer(-1)
    } else {
        integer(1)
    };
    let leibniz = mul(&c.apply_d(x), y)? + mul(x, &c.apply_d(y))?.scale(&sign);
    ensure(c.apply_d(&mul(x, y)?) == leibniz, "Leibniz")?;
    ensure(c.apply_d(&c.apply_d(x)).is_zero(), "d^2")?;
    Ok(4)
}

fn algebra_laws() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0009);
    let mut checks = 0;
    let mut kinds = [0usize; 3];
    while checks < 10_000 {
        let base = random_cdga(&mut rng);
        let (c, kind) = match rng.gen_range(0..3) {
            0 => (base, 0),
            1 => (base.tensor(&random_cdga(&mut rng)), 1),
            _ => {
                let fibre = if rng.gen_bool(0.5) { 1 } else { 3 };
                let e = random_cocycle(&base, fibre + 1, &mut rng);
                (
                    sphere_bundle_model(&base, &e, fibre).map_err(|e| e.to_string())?,
                    2,
                )
            }
        };
        kinds[kind] += 1;
        for _ in 0..10 {
            checks += law_round(&c, &mut rng)?;
        }
    }
    ensure(
        kinds.iter().all(|&k| k > 0),
        "not every construction was exercised",
    )?;
    Ok(format!(
        "{checks} checks on {} free, {} tensor and {} sphere-bundle algebras",
        kinds[0], kinds[1], kinds[2]
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check); 9] = [
        ("CP^n cohomology", cpn_cohomology),
        ("Kodaira-Thurston Betti numbers", kodaira_thurston_betti),
        ("b3 unchanged by a degree-3 extension", rel3_property),
        ("Gysin reproduction", gysin_reproduction),
        (
            "hard Lefschetz implies even Betti numbers",
            lefschetz_implies_even,
        ),
        ("K-contact non-Sasakian 13-manifold", main_result),
        ("Weinstein example", weinstein),
        ("minimal-model builder", minimal_models),
        ("algebra laws", algebra_laws),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS [{}] {name}: {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL [{}] {name}: {why}", k + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
