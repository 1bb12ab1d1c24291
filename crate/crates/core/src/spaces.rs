//! Ready-made models and Betti data, the K-contact pipeline (sphere bundle over a
//! symplectic base, then the Sasakian parity test) and the Weinstein example.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use alloc::{format, vec};

use num_traits::One;

use crate::algebra::{Element, FreeAlgebra};
use crate::cdga::{Cdga, Minimality};
use crate::cohomology::{class_is_zero, cohomology_table, is_cocycle};
use crate::obstructions::{
    c_splitting_betti, fatness_weight_certificate, sasaki_parity_test, BettiVector,
    FatnessCertificate, SasakianVerdict, Verdict, WeightVector,
};
use crate::sullivan::{sphere_bundle_model, verify_lemma_rel3, Rel3Report};
use crate::{Error, Rational, Result};

const MCDUFF: &str = "D. McDuff, Examples of simply-connected symplectic non-Kählerian \
manifolds, J. Differential Geom. 20 (1984), 267-277";

/// A catalog space: a model with its formal dimension, or Betti data with a source.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpaceData {
    Model {
        cdga: Cdga,
        dimension: usize,
    },
    Betti {
        betti: BettiVector,
        citation: String,
    },
}

impl SpaceData {
    pub fn dimension(&self) -> usize {
        match self {
            SpaceData::Model { dimension, .. } => *dimension,
            SpaceData::Betti { betti, .. } => betti.dimension(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: String,
    pub description: String,
    pub data: SpaceData,
}

/// `S^n`: `Λ(z; dz = 0)` with `|z| = n` odd, `Λ(v, y; dy = v²)` with `|v| = n` even.
pub fn sphere(n: u32) -> Result<Cdga> {
    if n == 0 {
        return Err(Error::ZeroDegreeGenerator("z".into()));
    }
    if n % 2 == 1 {
        return Ok(Cdga::free(FreeAlgebra::new([("z", n)])?));
    }
    Cdga::build(
        &[("v", n), ("y", 2 * n - 1)],
        &[("y", &|a: &FreeAlgebra| Ok(a.pow(&a.gen("v")?, 2)))],
    )
}

/// `CP^n`: `Λ(v, y; dy = v^{n+1})`, `|v| = 2`, `|y| = 2n + 1`.
pub fn cpn(n: u32) -> Result<Cdga> {
    if n == 0 {
        return Err(Error::ZeroDegreeGenerator("v".into()));
    }
    Cdga::build(
        &[("v", 2), ("y", 2 * n + 1)],
        &[("y", &|a: &FreeAlgebra| Ok(a.pow(&a.gen("v")?, n + 1)))],
    )
}

/// The Kodaira–Thurston nilmanifold: `Λ(a, b, c, d; dc = ab)`, all of degree 1.
pub fn kodaira_thurston() -> Cdga {
    Cdga::build(
        &[("a", 1), ("b", 1), ("c", 1), ("d", 1)],
        &[("c", &|a: &FreeAlgebra| {
            a.multiply(&a.gen("a")?, &a.gen("b")?)
        })],
    )
    .expect("Kodaira-Thurston model is well formed")
}

pub fn product(a: &Cdga, b: &Cdga) -> Cdga {
    a.tensor(b)
}

/// The symplectic blow-up of `CP^5` along a Kodaira–Thurston manifold. Only
/// `b_0`, `b_1` and `b_3` are recorded.
pub fn blowup_cp5() -> BettiVector {
    BettiVector::new(10, vec![Some(1), Some(0), None, Some(3)]).expect("valid Betti data")
}

/// The analogous blow-up of `CP^6`, again with `b_3 = 3`.
pub fn blowup_cp6() -> BettiVector {
    BettiVector::new(12, vec![Some(1), Some(0), None, Some(3)]).expect("valid Betti data")
}

pub fn sphere2_betti() -> BettiVector {
    BettiVector::complete(&[1, 0, 1]).expect("valid Betti data")
}

fn model(name: &str, description: String, cdga: Cdga, dimension: usize) -> CatalogEntry {
    CatalogEntry {
        name: name.to_string(),
        description,
        data: SpaceData::Model { cdga, dimension },
    }
}

fn atom(name: &str) -> Result<CatalogEntry> {
    let unknown = || Error::UnknownSpace(name.to_string());
    let parse = |rest: &str| {
        rest.parse::<u32>()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(unknown)
    };
    match name {
        "kt" | "kodaira-thurston" => Ok(model(
            "kt",
            "Kodaira-Thurston nilmanifold, Λ(a,b,c,d; dc = ab)".into(),
            kodaira_thurston(),
            4,
        )),
        "blowup-cp5" => Ok(CatalogEntry {
            name: name.into(),
            description: "symplectic blow-up of CP^5 along Kodaira-Thurston, b3 = 3".into(),
            data: SpaceData::Betti {
                betti: blowup_cp5(),
                citation: MCDUFF.into(),
            },
        }),
        "blowup-cp6" => Ok(CatalogEntry {
            name: name.into(),
            description: "symplectic blow-up of CP^6 along Kodaira-Thurston, b3 = 3".into(),
            data: SpaceData::Betti {
                betti: blowup_cp6(),
                citation: MCDUFF.into(),
            },
        }),
        _ => {
            if let Some(rest) = name.strip_prefix("cp") {
                let n = parse(rest)?;
                let d = format!("complex projective space CP^{n}, Λ(v,y; dy = v^{})", n + 1);
                Ok(model(name, d, cpn(n)?, 2 * n as usize))
            } else if let Some(rest) = name.strip_prefix('s') {
                let n = parse(rest)?;
                let d = if n % 2 == 1 {
                    format!("sphere S^{n}, Λ(z)")
                } else {
                    format!("sphere S^{n}, Λ(v,y; dy = v^2)")
                };
                Ok(model(name, d, sphere(n)?, n as usize))
            } else {
                Err(unknown())
            }
        }
    }
}

/// Resolves a catalog name: `s<n>`, `cp<n>`, `kt` (or `kodaira-thurston`),
/// `blowup-cp5`, `blowup-cp6`, and products of models such as `s2*cp2`.
pub fn lookup(name: &str) -> Result<CatalogEntry> {
    let name = name.trim().to_ascii_lowercase();
    let parts: Vec<&str> = name.split('*').map(str::trim).collect();
    if parts.len() == 1 {
        return atom(parts[0]);
    }
    let mut cdga = Cdga::trivial();
    let mut dimension = 0;
    let mut descriptions = Vec::new();
    for part in &parts {
        let entry = atom(part)?;
        match entry.data {
            SpaceData::Model {
                cdga: c,
                dimension: d,
            } => {
                cdga = product(&cdga, &c);
                dimension += d;
                descriptions.push(entry.name);
            }
            SpaceData::Betti { .. } => return Err(Error::UnknownSpace(name.clone())),
        }
    }
    Ok(model(
        &parts.join("*"),
        format!("product {}", descriptions.join(" x ")),
        cdga,
        dimension,
    ))
}

/// The standard listing; [`lookup`] accepts further parameters and products.
pub fn catalog() -> Vec<CatalogEntry> {
    [
        "s2",
        "s3",
        "s4",
        "s5",
        "cp1",
        "cp2",
        "cp3",
        "cp4",
        "cp5",
        "kt",
        "s2*s2",
        "cp2*s2",
        "s3*s3",
        "blowup-cp5",
        "blowup-cp6",
    ]
    .iter()
    .map(|n| lookup(n).expect("catalog names resolve"))
    .collect()
}

/// Base of the pipeline together with the class `[ω]` when a model is given.
#[derive(Debug, Clone)]
pub enum PipelineBase<'a> {
    Model {
        cdga: &'a Cdga,
        dimension: usize,
        omega: &'a Element,
    },
    Betti(&'a BettiVector),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PipelineReport {
    pub base: String,
    /// Rendered `ω`, absent in Betti mode.
    pub omega: Option<String>,
    /// Rendered attaching cocycle `(Π w_i) ω^{n+1}`, absent in Betti mode.
    pub euler: Option<String>,
    pub fibre_dimension: u32,
    pub dimension: usize,
    pub betti: BettiVector,
    /// Total-space model, in model mode.
    pub model: Option<Cdga>,
    /// `b_3` transfer check, run for `S^3` fibres over a minimal simply connected model.
    pub rel3: Option<Rel3Report>,
    pub sasakian: SasakianVerdict,
    pub fatness: FatnessCertificate,
}

/// The sphere bundle `S^{2n+1} → M → X` associated with the weighted circle
/// action on `C^{n+1}`, followed by the Sasakian parity test on `M` and the
/// fatness certificate for the weights.
///
/// In model mode `M` is modelled by `X ⊗ Λy` with `dy = (Π w_i) ω^{n+1}` and its
/// Betti numbers are computed up to `max_degree`. In Betti mode `b_p(M) = b_p(X)`
/// for `p ≤ 2n`, and for `n = 1` also `b_3(M) = b_3(X)`, the class `ω²` being
/// non-zero by hypothesis; all other entries are unknown.
pub fn k_contact_pipeline(
    name: &str,
    base: &PipelineBase<'_>,
    weights: &WeightVector,
    max_degree: u32,
) -> Result<PipelineReport> {
    let fibre_dimension = weights.sphere_dimension();
    let n = weights.weights().len() as u32 - 1;
    let fatness = fatness_weight_certificate(weights);
    let report = match base {
        PipelineBase::Model {
            cdga,
            dimension,
            omega,
        } => {
            let algebra = cdga.algebra();
            if algebra.check_degree(omega, 2).is_err() {
                return Err(Error::NotDegreeTwo);
            }
            if !is_cocycle(cdga, omega)? {
                return Err(Error::NotACocycle);
            }
            let b1 = cohomology_table(cdga, 1)?.betti(1);
            if b1 != 0 {
                return Err(Error::NotSimplyConnected(b1));
            }
            let scale = weights
                .weights()
                .iter()
                .fold(Rational::one(), |acc, &w| acc * crate::integer(w));
            let euler = algebra.pow(omega, n + 1).scale(&scale);
            if n == 1 && class_is_zero(cdga, &euler)? {
                return Err(Error::ExactClass);
            }
            let total = sphere_bundle_model(cdga, &euler, fibre_dimension)?;
            let dimension = dimension + fibre_dimension as usize;
            let last = (max_degree as usize).min(dimension) as u32;
            let table = cohomology_table(&total, last)?;
            let values = table.bettis().into_iter().map(|b| Some(b as u64)).collect();
            let betti = BettiVector::new(dimension, values)?;
            let simple = matches!(cdga.is_minimal(), Minimality::Minimal)
                && algebra.generators().iter().all(|g| g.degree != 1);
            let rel3 = if n == 1 && simple {
                Some(verify_lemma_rel3(cdga, &euler)?)
            } else {
                None
            };
            PipelineReport {
                base: name.to_string(),
                omega: Some(algebra.render(omega)),
                euler: Some(algebra.render(&euler)),
                fibre_dimension,
                dimension,
                sasakian: sasaki_parity_test(&betti)?,
                betti,
                model: Some(total),
                rel3,
                fatness,
            }
        }
        PipelineBase::Betti(x) => {
            let b1 = x.require(1)?;
            if b1 != 0 {
                return Err(Error::NotSimplyConnected(b1 as usize));
            }
            if n == 1 && x.dimension() < 4 {
                return Err(Error::ExactClass);
            }
            let dimension = x.dimension() + fibre_dimension as usize;
            let last = (max_degree as usize).min(dimension);
            let values = (0..=last)
                .map(|p| {
                    if p < fibre_dimension as usize || (n == 1 && p == 3) {
                        x.get(p)
                    } else {
                        None
                    }
                })
                .collect();
            let betti = BettiVector::new(dimension, values)?;
            PipelineReport {
                base: name.to_string(),
                omega: None,
                euler: None,
                fibre_dimension,
                dimension,
                sasakian: sasaki_parity_test(&betti)?,
                betti,
                model: None,
                rel3: None,
                fatness,
            }
        }
    };
    if let (Some(b3), Some(rel3)) = (report.betti.get(3), &report.rel3) {
        if b3 != rel3.b3_extension as u64 || !rel3.equal() {
            return Err(Error::Internal(format!(
                "b3 transfer failed: base {}, total space {}",
                rel3.b3_base, rel3.b3_extension
            )));
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeinsteinReport {
    pub k: usize,
    /// `b_k` of the `CP^6`-blow-up bundle over `S^2`.
    pub betti: u64,
    pub b3: u64,
    /// A compact Kähler manifold has even odd-degree Betti numbers.
    pub non_kahler: bool,
}

/// Betti numbers of the Hamiltonian bundle with fibre the `CP^6` blow-up over
/// `S^2`, computed by c-splitting.
pub fn weinstein_example(k: usize) -> Result<WeinsteinReport> {
    let fibre = blowup_cp6();
    let base = sphere2_betti();
    let b3 = c_splitting_betti(&fibre, &base, 3)?;
    Ok(WeinsteinReport {
        k,
        betti: c_splitting_betti(&fibre, &base, k)?,
        b3,
        non_kahler: b3 % 2 == 1,
    })
}

/// Whether the pipeline found the parity obstruction.
pub fn is_not_sasakian(report: &PipelineReport) -> bool {
    report.sasakian.verdict == Verdict::NotSasakian
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::obstructions::Verdict;

    #[test]
    fn cp2_betti() {
        let t = cohomology_table(&cpn(2).unwrap(), 5).unwrap();
        assert_eq!(t.bettis(), [1, 0, 1, 0, 1, 0]);
    }

    #[test]
    fn spheres() {
        assert_eq!(
            cohomology_table(&sphere(3).unwrap(), 4).unwrap().bettis(),
            [1, 0, 0, 1, 0]
        );
        assert_eq!(
            cohomology_table(&sphere(4).unwrap(), 8).unwrap().bettis(),
            [1, 0, 0, 0, 1, 0, 0, 0, 0]
        );
        assert!(sphere(0).is_err());
    }

    #[test]
    fn kt_betti() {
        let t = cohomology_table(&kodaira_thurston(), 4).unwrap();
        assert_eq!(t.bettis(), [1, 3, 4, 3, 1]);
    }

    #[test]
    fn blowup_b3() {
        assert_eq!(blowup_cp5().get(3), Some(3));
        assert_eq!(blowup_cp6().get(3), Some(3));
        assert_eq!(blowup_cp5().get(2), None);
    }

    #[test]
    fn lookup_names() {
        assert_eq!(lookup("CP3").unwrap().data.dimension(), 6);
        let p = lookup("s2 * cp2").unwrap();
        assert_eq!(p.name, "s2*cp2");
        assert_eq!(p.data.dimension(), 6);
        assert_eq!(lookup("kodaira-thurston").unwrap().name, "kt");
        assert!(matches!(lookup("cp0"), Err(Error::UnknownSpace(_))));
        assert!(matches!(lookup("torus"), Err(Error::UnknownSpace(_))));
        assert!(matches!(
            lookup("s2*blowup-cp5"),
            Err(Error::UnknownSpace(_))
        ));
        for e in catalog() {
            if let SpaceData::Betti { citation, .. } = &e.data {
                assert!(!citation.is_empty());
            }
        }
    }

    #[test]
    fn pipeline_cp2() {
        let x = cpn(2).unwrap();
        let v = x.gen("v").unwrap();
        let base = PipelineBase::Model {
            cdga: &x,
            dimension: 4,
            omega: &v,
        };
        let w = WeightVector::new(vec![1, 1]).unwrap();
        let r = k_contact_pipeline("cp2", &base, &w, 7).unwrap();
        assert_eq!(r.dimension, 7);
        assert_eq!(r.betti.get(3), Some(0));
        assert_eq!(r.sasakian.verdict, Verdict::NoObstruction);
        assert_eq!(r.euler.as_deref(), Some("v^2"));
        assert!(r.rel3.unwrap().equal());
        assert_eq!(
            r.betti.values(),
            [1, 0, 1, 0, 0, 1, 0, 1].map(Some).as_slice()
        );
    }

    #[test]
    fn pipeline_scaled_euler() {
        let x = cpn(2).unwrap();
        let v = x.gen("v").unwrap();
        let base = PipelineBase::Model {
            cdga: &x,
            dimension: 4,
            omega: &v,
        };
        let w = WeightVector::new(vec![1, 2]).unwrap();
        let r = k_contact_pipeline("cp2", &base, &w, 7).unwrap();
        assert_eq!(r.euler.as_deref(), Some("2*v^2"));
        assert_eq!(r.fatness.moment_lower_bound, crate::integer(1));
        assert!(r.fatness.certified);
        let zero = WeightVector::new(vec![0, 1]).unwrap();
        assert_eq!(
            k_contact_pipeline("cp2", &base, &zero, 7),
            Err(Error::ExactClass)
        );
    }

    #[test]
    fn pipeline_refusals() {
        let s2 = sphere(2).unwrap();
        let v = s2.gen("v").unwrap();
        let base = PipelineBase::Model {
            cdga: &s2,
            dimension: 2,
            omega: &v,
        };
        let w = WeightVector::new(vec![1, 1]).unwrap();
        assert_eq!(
            k_contact_pipeline("s2", &base, &w, 5),
            Err(Error::ExactClass)
        );
        let y = s2.gen("y").unwrap();
        let bad = PipelineBase::Model {
            cdga: &s2,
            dimension: 2,
            omega: &y,
        };
        assert_eq!(
            k_contact_pipeline("s2", &bad, &w, 5),
            Err(Error::NotDegreeTwo)
        );
        let kt = kodaira_thurston();
        let omega = kt
            .multiply(&kt.gen("a").unwrap(), &kt.gen("d").unwrap())
            .unwrap();
        let base = PipelineBase::Model {
            cdga: &kt,
            dimension: 4,
            omega: &omega,
        };
        assert_eq!(
            k_contact_pipeline("kt", &base, &w, 5),
            Err(Error::NotSimplyConnected(3))
        );
        let torus = BettiVector::complete(&[1, 2, 1]).unwrap();
        assert_eq!(
            k_contact_pipeline("t2", &PipelineBase::Betti(&torus), &w, 5),
            Err(Error::NotSimplyConnected(2))
        );
    }

    #[test]
    fn pipeline_blowup() {
        let x = blowup_cp5();
        let w = WeightVector::new(vec![1, 1]).unwrap();
        let r = k_contact_pipeline("blowup-cp5", &PipelineBase::Betti(&x), &w, 13).unwrap();
        assert_eq!(r.dimension, 13);
        assert_eq!(r.betti.get(3), Some(3));
        assert!(is_not_sasakian(&r));
        assert_eq!(r.sasakian.offending, [(3, 3)]);
        assert_eq!(r.fatness.moment_lower_bound, crate::integer(1));
    }

    #[test]
    fn higher_fibre_keeps_low_degrees() {
        let x = cpn(3).unwrap();
        let v = x.gen("v").unwrap();
        let base = PipelineBase::Model {
            cdga: &x,
            dimension: 6,
            omega: &v,
        };
        let w = WeightVector::new(vec![1, 1, 1]).unwrap();
        let r = k_contact_pipeline("cp3", &base, &w, 11).unwrap();
        assert_eq!(r.fibre_dimension, 5);
        assert_eq!(r.dimension, 11);
        assert_eq!(
            r.betti.values(),
            [1, 0, 1, 0, 1, 0, 0, 1, 0, 1, 0, 1].map(Some).as_slice()
        );
        assert!(r.rel3.is_none());
    }

    #[test]
    fn weinstein() {
        assert_eq!(weinstein_example(3).unwrap().betti, 3);
        assert_eq!(weinstein_example(0).unwrap().betti, 1);
        assert_eq!(weinstein_example(1).unwrap().betti, 0);
        assert!(weinstein_example(3).unwrap().non_kahler);
        assert_eq!(
            weinstein_example(2).map(|r| r.betti),
            Err(Error::UnknownBetti(2))
        );
    }
}
