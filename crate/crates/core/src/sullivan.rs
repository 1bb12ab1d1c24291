//! Sullivan-model constructions: relative extensions `(B ⊗ Λy, d)`, sphere-bundle
//! models, the degree-3 transfer check for a degree-3 extension and a minimal-model
//! builder for simply connected free inputs.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use alloc::{format, vec};

use num_traits::Zero;

use crate::algebra::Element;
use crate::cdga::Cdga;
use crate::cohomology::{class_is_zero, cohomology_table, CohomologyTable};
use crate::linalg::{solve, RationalMatrix, SubspaceBasis};
use crate::{Error, Result};

/// `(base ⊗ Λ(name), d)` with `d(name) = z`.
///
/// `z` must be a cocycle of degree `degree + 1` (or zero), so the extension
/// automatically satisfies `d² = 0`.
pub fn adjoin(base: &Cdga, name: &str, degree: u32, z: &Element) -> Result<Cdga> {
    base.algebra().check_degree(z, degree + 1)?;
    if !base.apply_d(z).is_zero() {
        return Err(Error::NotACocycle);
    }
    base.extended(name.to_string(), degree, z.clone())
}

/// Model of the unit sphere bundle with fibre `S^k` and Euler class `[euler]`:
/// `base ⊗ Λy` with `|y| = k`, `dy = euler`. The new generator is named `y`
/// (or `y_1`, `y_2`, … if taken).
pub fn sphere_bundle_model(base: &Cdga, euler: &Element, fibre_dim: u32) -> Result<Cdga> {
    if fibre_dim % 2 == 0 {
        return Err(Error::EvenSphereDimension(fibre_dim));
    }
    let name = base.fresh_name("y");
    adjoin(base, &name, fibre_dim, euler)
}

/// Result of [`verify_lemma_rel3`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rel3Report {
    /// Name of the adjoined degree-3 generator.
    pub generator: String,
    pub b3_base: usize,
    pub b3_extension: usize,
}

impl Rel3Report {
    pub fn equal(&self) -> bool {
        self.b3_base == self.b3_extension
    }
}

/// Compares `b₃` of a minimal algebra with no degree-1 generators before and
/// after adjoining `y` of degree 3 with `dy = z`, for a degree-4 cocycle `z` with
/// non-zero class. The two must agree; hypotheses are enforced, not assumed.
pub fn verify_lemma_rel3(base: &Cdga, z: &Element) -> Result<Rel3Report> {
    if let crate::cdga::Minimality::NotMinimal { generator } = base.is_minimal() {
        return Err(Error::NotMinimal(generator));
    }
    let degree_one: Vec<&str> = base
        .algebra()
        .generators()
        .iter()
        .filter(|g| g.degree == 1)
        .map(|g| g.name.as_str())
        .collect();
    if !degree_one.is_empty() {
        return Err(Error::DegreeOneGenerators(degree_one.join(", ")));
    }
    base.algebra().check_degree(z, 4)?;
    if class_is_zero(base, z)? {
        return Err(Error::ExactClass);
    }
    let generator = base.fresh_name("y");
    let extension = adjoin(base, &generator, 3, z)?;
    Ok(Rel3Report {
        generator,
        b3_base: cohomology_table(base, 3)?.betti(3),
        b3_extension: cohomology_table(&extension, 3)?.betti(3),
    })
}

/// A CDGA morphism determined by the images of the source generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelMorphism {
    pub source: Cdga,
    pub target: Cdga,
    images: Vec<Element>,
}

impl ModelMorphism {
    /// Checks degrees and `φ(dx) = d(φx)` on every generator.
    pub fn new(source: Cdga, target: Cdga, images: Vec<Element>) -> Result<Self> {
        if images.len() != source.algebra().len() {
            return Err(Error::DimensionMismatch {
                expected: source.algebra().len(),
                found: images.len(),
            });
        }
        for (g, image) in images.iter().enumerate() {
            target
                .algebra()
                .check_degree(image, source.algebra().degree_of_generator(g))?;
        }
        let morphism = ModelMorphism {
            source,
            target,
            images,
        };
        if let Some(g) = morphism.commutation_failure() {
            return Err(Error::Internal(format!(
                "morphism does not commute with d on `{}`",
                morphism.source.algebra().name(g)
            )));
        }
        Ok(morphism)
    }

    pub fn images(&self) -> &[Element] {
        &self.images
    }

    pub fn image_of(&self, name: &str) -> Result<&Element> {
        self.source
            .algebra()
            .index_of(name)
            .map(|g| &self.images[g])
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    /// Multiplicative extension to arbitrary source elements.
    pub fn apply(&self, x: &Element) -> Element {
        let target = self.target.algebra();
        let mut out = Element::zero();
        for (m, c) in x.terms() {
            let mut image = Element::one();
            for &(g, e) in m.factors() {
                image = target.mul(&image, &target.pow(&self.images[g], e));
            }
            out += &image.scale(c);
        }
        out
    }

    /// First generator `x` with `φ(dx) ≠ d(φx)`.
    pub fn commutation_failure(&self) -> Option<usize> {
        (0..self.images.len()).find(|&g| {
            let left = self.apply(&self.source.differential()[g]);
            let right = self.target.apply_d(&self.images[g]);
            left != right
        })
    }

    /// Matrix of `H^p(source) → H^p(target)` in the representative bases of the tables.
    pub fn induced_map(
        &self,
        p: u32,
        source: &CohomologyTable,
        target: &CohomologyTable,
    ) -> Result<RationalMatrix> {
        let columns = source
            .representatives(p)
            .iter()
            .map(|rep| {
                let image = self.apply(rep);
                if image.is_zero() {
                    Ok(vec![crate::Rational::zero(); target.betti(p)])
                } else {
                    target.class_of(&self.target, &image)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(RationalMatrix::from_columns(target.betti(p), &columns))
    }

    /// Whether the linear part of `φ` (the generator components of the images)
    /// is a bijection between generating spaces, degree by degree. For a
    /// quasi-isomorphism between minimal algebras this is the isomorphism test.
    pub fn linear_part_is_bijective(&self) -> bool {
        let src = self.source.algebra();
        let tgt = self.target.algebra();
        let max = src
            .generators()
            .iter()
            .chain(tgt.generators())
            .map(|g| g.degree)
            .max()
            .unwrap_or(0);
        (1..=max).all(|k| {
            let source_gens: Vec<usize> = (0..src.len())
                .filter(|&g| src.degree_of_generator(g) == k)
                .collect();
            let target_gens: Vec<usize> = (0..tgt.len())
                .filter(|&g| tgt.degree_of_generator(g) == k)
                .collect();
            if source_gens.len() != target_gens.len() {
                return false;
            }
            let mut m = RationalMatrix::zeros(target_gens.len(), source_gens.len());
            for (col, &g) in source_gens.iter().enumerate() {
                for (m_, c) in self.images[g].terms() {
                    if let Some(t) = m_.as_generator() {
                        let row = target_gens
                            .iter()
                            .position(|&x| x == t)
                            .expect("degree preserved");
                        m.set(row, col, c.clone());
                    }
                }
            }
            m.rank() == source_gens.len()
        })
    }
}

/// Per-degree evidence that a morphism induces isomorphisms in cohomology.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeCertificate {
    pub degree: u32,
    pub source_betti: usize,
    pub target_betti: usize,
    pub rank: usize,
}

impl DegreeCertificate {
    pub fn is_isomorphism(&self) -> bool {
        self.rank == self.source_betti && self.rank == self.target_betti
    }

    pub fn is_injective(&self) -> bool {
        self.rank == self.source_betti
    }
}

/// Isomorphism on `H^p` for `p ≤ max_degree`, injective on `H^{max_degree+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuasiIsoCertificate {
    pub max_degree: u32,
    pub degrees: Vec<DegreeCertificate>,
}

impl QuasiIsoCertificate {
    pub fn holds(&self) -> bool {
        self.degrees.iter().all(|c| {
            if c.degree <= self.max_degree {
                c.is_isomorphism()
            } else {
                c.is_injective()
            }
        })
    }

    pub fn compute(morphism: &ModelMorphism, max_degree: u32) -> Result<Self> {
        let source = cohomology_table(&morphism.source, max_degree + 1)?;
        let target = cohomology_table(&morphism.target, max_degree + 1)?;
        Self::from_tables(morphism, &source, &target)
    }

    fn from_tables(
        morphism: &ModelMorphism,
        source: &CohomologyTable,
        target: &CohomologyTable,
    ) -> Result<Self> {
        let max_degree = source.max_degree - 1;
        let degrees = (0..=source.max_degree)
            .map(|p| {
                Ok(DegreeCertificate {
                    degree: p,
                    source_betti: source.betti(p),
                    target_betti: target.betti(p),
                    rank: morphism.induced_map(p, source, target)?.rank(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(QuasiIsoCertificate {
            max_degree,
            degrees,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimalModel {
    pub model: Cdga,
    pub morphism: ModelMorphism,
    pub certificate: QuasiIsoCertificate,
}

/// Minimal model of a simply connected free CDGA through degree `max_degree`.
///
/// Degree by degree, for `k = 2, …, max_degree`: closed generators of degree `k`
/// are added mapping onto a complement of the image of `H^k(model)` in
/// `H^k(input)`, then generators of degree `k` with decomposable differentials
/// kill the kernel of `H^{k+1}(model) → H^{k+1}(input)`. New generators are named
/// `x{k}_{i}`; kernels and cokernels are processed in canonical basis order.
pub fn minimal_model(input: &Cdga, max_degree: u32) -> Result<MinimalModel> {
    if max_degree < 2 {
        return Err(Error::MaxDegreeTooSmall {
            given: max_degree,
            needed: 2,
        });
    }
    let target = cohomology_table(input, max_degree + 1)?;
    if target.betti(1) != 0 {
        return Err(Error::NotSimplyConnected(target.betti(1)));
    }
    let input_algebra = input.algebra();

    let mut model = Cdga::trivial();
    let mut images: Vec<Element> = Vec::new();
    for k in 2..=max_degree {
        let mut count = 0;

        // surject onto H^k(input)
        let morphism = ModelMorphism::new(model.clone(), input.clone(), images.clone())?;
        let source = cohomology_table(&model, k)?;
        let induced = morphism.induced_map(k, &source, &target)?;
        let mut span = SubspaceBasis::span(target.betti(k), induced_columns(&induced));
        for (i, rep) in target.representatives(k).iter().enumerate() {
            let mut e = vec![crate::Rational::zero(); target.betti(k)];
            e[i] = crate::integer(1);
            if span.try_push(e) {
                model = adjoin(&model, &format!("x{k}_{count}"), k, &Element::zero())?;
                images.push(rep.clone());
                count += 1;
            }
        }

        // kill the kernel in degree k + 1
        let morphism = ModelMorphism::new(model.clone(), input.clone(), images.clone())?;
        let source = cohomology_table(&model, k + 1)?;
        let induced = morphism.induced_map(k + 1, &source, &target)?;
        let kernel = induced.kernel_basis();
        let lower_basis = input.basis(k);
        let upper_basis = input.basis(k + 1);
        let d_columns = induced_columns(&input.d_matrix_between(&lower_basis, &upper_basis));
        let mut killers = Vec::new();
        for c in kernel.vectors() {
            let mut cocycle = Element::zero();
            for (coef, rep) in c.iter().zip(source.representatives(k + 1)) {
                cocycle += &rep.scale(coef);
            }
            let image = morphism.apply(&cocycle);
            let coords = input.coordinates(&upper_basis, &image)?;
            let primitive = solve(upper_basis.len(), &d_columns, &coords).ok_or_else(|| {
                Error::Internal("kernel class does not map to a coboundary".into())
            })?;
            killers.push((
                cocycle,
                Cdga::element_from_coordinates(&lower_basis, &primitive),
            ));
        }
        for (cocycle, primitive) in killers {
            model = adjoin(&model, &format!("x{k}_{count}"), k, &cocycle)?;
            debug_assert_eq!(input_algebra.degree(&primitive).unwrap_or(k), k);
            images.push(primitive);
            count += 1;
        }
    }

    let morphism = ModelMorphism::new(model.clone(), input.clone(), images)?;
    let source = cohomology_table(&model, max_degree + 1)?;
    let certificate = QuasiIsoCertificate::from_tables(&morphism, &source, &target)?;
    Ok(MinimalModel {
        model,
        morphism,
        certificate,
    })
}

fn induced_columns(m: &RationalMatrix) -> Vec<Vec<crate::Rational>> {
    let t = m.transpose();
    t.to_dense()
}
