//! Differentials on free graded-commutative algebras.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use alloc::{format, vec};

use crate::algebra::{Element, FreeAlgebra, Monomial};
use crate::linalg::RationalMatrix;
use crate::{integer, Error, Rational, Result};

/// A free commutative differential graded algebra `(ΛV, d)`.
///
/// Construction checks that every differential is homogeneous of degree one more
/// than its generator and that `d² = 0` on generators, so every value of this
/// type is a genuine cochain algebra.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cdga {
    algebra: FreeAlgebra,
    differential: Vec<Element>,
}

/// Outcome of [`check_d_squared`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DSquaredReport {
    Pass,
    Fail {
        generator: String,
        /// `d(d(generator))`, non-zero.
        witness: Element,
    },
}

impl DSquaredReport {
    pub fn passed(&self) -> bool {
        matches!(self, DSquaredReport::Pass)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Minimality {
    Minimal,
    /// `d(generator)` has a term that is a single generator.
    NotMinimal {
        generator: String,
    },
}

impl Minimality {
    pub fn is_minimal(&self) -> bool {
        matches!(self, Minimality::Minimal)
    }
}

/// Stages `V(0) ⊂ V(1) ⊂ …` of a Sullivan filtration, as lists of generator indices.
/// Stage `k` holds the generators first reachable at step `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SullivanFiltration {
    pub stages: Vec<Vec<usize>>,
}

/// Applies the derivation determined by `differential` to `x`.
fn derive(algebra: &FreeAlgebra, differential: &[Element], x: &Element) -> Element {
    let mut out = Element::zero();
    for (m, c) in x.terms() {
        for block in 0..m.factors().len() {
            let (g, e) = m.factors()[block];
            let dg = &differential[g];
            if dg.is_zero() {
                continue;
            }
            // d(g^e) = e·g^{e-1}·dg for even g; odd g has e = 1.
            let (prefix, lowered, suffix, before) = algebra.leibniz_pieces(m, block);
            let mut coeff = c * integer(e.into());
            if before % 2 == 1 {
                coeff = -coeff;
            }
            let left = algebra.mul(&Element::monomial(prefix), &Element::monomial(lowered));
            let term = algebra.mul(&algebra.mul(&left, dg), &Element::monomial(suffix));
            out += &term.scale(&coeff);
        }
    }
    out
}

/// Checks `d(d(g)) = 0` for every generator `g` with `|g| + 2 ≤ max_degree`.
///
/// Works on raw parts so that candidate differentials can be tested before a
/// [`Cdga`] exists; `max_degree` must cover every generator.
pub fn check_d_squared(
    algebra: &FreeAlgebra,
    differential: &[Element],
    max_degree: u32,
) -> Result<DSquaredReport> {
    validate_shape(algebra, differential)?;
    let needed = algebra
        .generators()
        .iter()
        .map(|g| g.degree + 2)
        .max()
        .unwrap_or(0);
    if max_degree < needed {
        return Err(Error::MaxDegreeTooSmall {
            given: max_degree,
            needed,
        });
    }
    for (g, dg) in differential.iter().enumerate() {
        let dd = derive(algebra, differential, dg);
        if !dd.is_zero() {
            return Ok(DSquaredReport::Fail {
                generator: algebra.name(g).to_string(),
                witness: dd,
            });
        }
    }
    Ok(DSquaredReport::Pass)
}

fn validate_shape(algebra: &FreeAlgebra, differential: &[Element]) -> Result<()> {
    if differential.len() != algebra.len() {
        return Err(Error::DifferentialCount {
            expected: algebra.len(),
            found: differential.len(),
        });
    }
    for (g, dg) in differential.iter().enumerate() {
        algebra.check_degree(dg, algebra.degree_of_generator(g) + 1)?;
    }
    Ok(())
}

impl Cdga {
    pub fn new(algebra: FreeAlgebra, differential: Vec<Element>) -> Result<Self> {
        let needed = algebra
            .generators()
            .iter()
            .map(|g| g.degree + 2)
            .max()
            .unwrap_or(0);
        match check_d_squared(&algebra, &differential, needed)? {
            DSquaredReport::Pass => Ok(Cdga {
                algebra,
                differential,
            }),
            DSquaredReport::Fail { generator, witness } => Err(Error::DSquaredNonzero {
                generator,
                image: algebra.render(&witness),
            }),
        }
    }

    /// `(ΛV, 0)` on the given generators.
    pub fn free(algebra: FreeAlgebra) -> Self {
        let differential = vec![Element::zero(); algebra.len()];
        Cdga {
            algebra,
            differential,
        }
    }

    /// The ground field `Q`, with no generators.
    pub fn trivial() -> Self {
        Cdga::free(FreeAlgebra::default())
    }

    /// Builds a CDGA from `(name, degree)` generators and `(name, differential)`
    /// pairs given as closures over the algebra; generators without an entry are closed.
    pub fn build(
        generators: &[(&str, u32)],
        differentials: &[(&str, &dyn Fn(&FreeAlgebra) -> Result<Element>)],
    ) -> Result<Self> {
        let algebra = FreeAlgebra::new(generators.iter().copied())?;
        let mut differential = vec![Element::zero(); algebra.len()];
        for (name, f) in differentials {
            let g = algebra
                .index_of(name)
                .ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
            differential[g] = f(&algebra)?;
        }
        Cdga::new(algebra, differential)
    }

    pub fn algebra(&self) -> &FreeAlgebra {
        &self.algebra
    }

    pub fn differential(&self) -> &[Element] {
        &self.differential
    }

    pub fn d_of(&self, name: &str) -> Result<&Element> {
        self.algebra
            .index_of(name)
            .map(|g| &self.differential[g])
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    pub fn gen(&self, name: &str) -> Result<Element> {
        self.algebra.gen(name)
    }

    /// `d(x)`, extended from generators by the graded Leibniz rule.
    ///
    /// # Panics
    /// If `x` mentions generators outside this algebra.
    pub fn apply_d(&self, x: &Element) -> Element {
        self.algebra
            .check_element(x)
            .expect("element belongs to a different algebra");
        derive(&self.algebra, &self.differential, x)
    }

    pub fn multiply(&self, a: &Element, b: &Element) -> Result<Element> {
        self.algebra.multiply(a, b)
    }

    /// Re-runs the `d² = 0` check; always passes for a constructed value.
    pub fn check_d_squared(&self, max_degree: u32) -> Result<DSquaredReport> {
        check_d_squared(&self.algebra, &self.differential, max_degree)
    }

    /// Minimal iff no differential contains a single generator, i.e. `Im d ⊂ Λ⁺V·Λ⁺V`.
    pub fn is_minimal(&self) -> Minimality {
        for (g, dg) in self.differential.iter().enumerate() {
            if dg
                .terms()
                .any(|(m, _)| m.as_generator().is_some() || m.is_unit())
            {
                return Minimality::NotMinimal {
                    generator: self.algebra.name(g).to_string(),
                };
            }
        }
        Minimality::Minimal
    }

    pub fn basis(&self, p: u32) -> Vec<Monomial> {
        self.algebra.basis(p)
    }

    /// Coordinates of a homogeneous element of degree `p` in `basis(p)`.
    pub fn coordinates(&self, basis: &[Monomial], x: &Element) -> Result<Vec<Rational>> {
        let mut v = vec![Rational::default(); basis.len()];
        for (m, c) in x.terms() {
            let i = basis.binary_search(m).map_err(|_| {
                Error::Internal(format!(
                    "monomial {} not in basis",
                    self.algebra.render_monomial(m)
                ))
            })?;
            v[i] = c.clone();
        }
        Ok(v)
    }

    pub fn element_from_coordinates(basis: &[Monomial], v: &[Rational]) -> Element {
        let mut e = Element::zero();
        for (m, c) in basis.iter().zip(v) {
            e.add_term(m.clone(), c.clone());
        }
        e
    }

    /// Matrix of `d: Λ^p → Λ^{p+1}` with columns indexed by `basis(p)` and rows by `basis(p+1)`.
    pub fn d_matrix(&self, p: u32) -> RationalMatrix {
        let source = self.basis(p);
        let target = self.basis(p + 1);
        self.d_matrix_between(&source, &target)
    }

    pub(crate) fn d_matrix_between(
        &self,
        source: &[Monomial],
        target: &[Monomial],
    ) -> RationalMatrix {
        let mut m = RationalMatrix::zeros(target.len(), source.len());
        for (j, mono) in source.iter().enumerate() {
            let image = derive(
                &self.algebra,
                &self.differential,
                &Element::monomial(mono.clone()),
            );
            for (t, c) in image.terms() {
                let i = target
                    .binary_search(t)
                    .expect("differential image outside target basis");
                m.set(i, j, c.clone());
            }
        }
        m
    }

    /// `A ⊗ B`. Generators of `other` whose names collide get a `_k` suffix with the
    /// smallest `k ≥ 1` that is free.
    pub fn tensor(&self, other: &Cdga) -> Cdga {
        let offset = self.algebra.len();
        let mut names: Vec<(String, u32)> = self
            .algebra
            .generators()
            .iter()
            .map(|g| (g.name.clone(), g.degree))
            .collect();
        for g in other.algebra.generators() {
            let taken =
                |n: &str| names.iter().any(|(m, _)| m == n) || other.algebra.index_of(n).is_some();
            let name = if names.iter().any(|(m, _)| *m == g.name) {
                (1..)
                    .map(|k| format!("{}_{}", g.name, k))
                    .find(|n| !taken(n))
                    .expect("infinite supply of suffixes")
            } else {
                g.name.clone()
            };
            names.push((name, g.degree));
        }
        let algebra = FreeAlgebra::new(names).expect("tensor generators are distinct");
        let mut differential = self.differential.clone();
        differential.extend(
            other
                .differential
                .iter()
                .map(|d| d.reindexed(|i| i + offset)),
        );
        Cdga {
            algebra,
            differential,
        }
    }

    /// Appends a generator with the given differential. The caller has already
    /// checked that `d(dy) = 0`, i.e. `dy` is a cocycle of degree `degree + 1`.
    pub(crate) fn extended(&self, name: String, degree: u32, dy: Element) -> Result<Cdga> {
        let mut gens: Vec<(String, u32)> = self
            .algebra
            .generators()
            .iter()
            .map(|g| (g.name.clone(), g.degree))
            .collect();
        gens.push((name, degree));
        let algebra = FreeAlgebra::new(gens)?;
        let mut differential = self.differential.clone();
        differential.push(dy);
        Cdga::new(algebra, differential)
    }

    /// A name not used by any generator: `base` itself, else `base_1`, `base_2`, ….
    pub fn fresh_name(&self, base: &str) -> String {
        if self.algebra.index_of(base).is_none() {
            return base.to_string();
        }
        (1..)
            .map(|k| format!("{base}_{k}"))
            .find(|n| self.algebra.index_of(n).is_none())
            .expect("infinite supply of names")
    }

    /// Greedy Sullivan filtration: stage 0 holds the closed generators, stage `k`
    /// those whose differential lies in the subalgebra on earlier stages.
    /// `None` if some generators are never reached.
    pub fn filtration(&self) -> Option<SullivanFiltration> {
        let n = self.algebra.len();
        let mut placed = vec![false; n];
        let mut stages: Vec<Vec<usize>> = Vec::new();
        let mut remaining = n;
        while remaining > 0 {
            let stage: Vec<usize> = (0..n)
                .filter(|&g| !placed[g])
                .filter(|&g| {
                    self.differential[g]
                        .terms()
                        .all(|(m, _)| m.factors().iter().all(|&(i, _)| placed[i]))
                })
                .collect();
            if stage.is_empty() {
                return None;
            }
            for &g in &stage {
                placed[g] = true;
            }
            remaining -= stage.len();
            stages.push(stage);
        }
        Some(SullivanFiltration { stages })
    }
}
