//! Degree-wise cohomology `H^p(ΛV, d)`, truncated at an explicit maximal degree.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::algebra::{Element, Monomial};
use crate::cdga::Cdga;
use crate::linalg::{quotient_dim, solve, RationalMatrix, SubspaceBasis};
use crate::ring::{FiniteRing, RingBasisElement};
use crate::{Error, Rational, Result};

/// Cohomology in a single degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeCohomology {
    pub degree: u32,
    /// Monomial basis of `Λ^p`, in canonical order.
    pub basis: Vec<Monomial>,
    /// Cocycles `Z^p` in coordinates of `basis`.
    pub cocycles: SubspaceBasis,
    /// Coboundaries `B^p` in coordinates of `basis`.
    pub coboundaries: SubspaceBasis,
    /// Cocycles whose classes form a basis of `H^p`.
    pub representatives: Vec<Element>,
    representative_coords: Vec<Vec<Rational>>,
}

impl DegreeCohomology {
    pub fn betti(&self) -> usize {
        self.representatives.len()
    }

    /// Coordinates of the class of a degree-`p` cocycle (given in `basis`
    /// coordinates) in the representative basis.
    pub fn class_coordinates(&self, x: &[Rational]) -> Result<Vec<Rational>> {
        if !self.cocycles.contains(x) {
            return Err(Error::NotACocycle);
        }
        let mut columns = self.representative_coords.clone();
        columns.extend(self.coboundaries.vectors().iter().cloned());
        let solution = solve(self.basis.len(), &columns, x).ok_or_else(|| {
            Error::Internal("cocycle not expressible in representatives plus coboundaries".into())
        })?;
        Ok(solution[..self.betti()].to_vec())
    }
}

/// `H^p` for `0 ≤ p ≤ max_degree`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohomologyTable {
    pub max_degree: u32,
    pub degrees: Vec<DegreeCohomology>,
}

impl CohomologyTable {
    pub fn bettis(&self) -> Vec<usize> {
        self.degrees.iter().map(DegreeCohomology::betti).collect()
    }

    pub fn betti(&self, p: u32) -> usize {
        self.degrees[p as usize].betti()
    }

    pub fn degree(&self, p: u32) -> &DegreeCohomology {
        &self.degrees[p as usize]
    }

    pub fn representatives(&self, p: u32) -> &[Element] {
        &self.degrees[p as usize].representatives
    }

    /// Coordinates of `[x]` in the representative basis of its degree.
    pub fn class_of(&self, cdga: &Cdga, x: &Element) -> Result<Vec<Rational>> {
        let algebra = cdga.algebra();
        algebra.check_element(x)?;
        let p = algebra.degree(x).ok_or(Error::NotHomogeneous)?;
        if p > self.max_degree {
            return Err(Error::MaxDegreeTooSmall {
                given: self.max_degree,
                needed: p,
            });
        }
        let slice = self.degree(p);
        let coords = cdga.coordinates(&slice.basis, x)?;
        slice.class_coordinates(&coords)
    }

    /// Coordinates of the degree-`p` class `[x]` in the basis of the ring
    /// [`extract_ring`] builds from this table; `x` may be zero.
    pub fn ring_coordinates(&self, cdga: &Cdga, x: &Element, p: u32) -> Result<Vec<Rational>> {
        cdga.algebra().check_degree(x, p)?;
        if p > self.max_degree {
            return Err(Error::MaxDegreeTooSmall {
                given: self.max_degree,
                needed: p,
            });
        }
        let offset: usize = self.degrees[..p as usize]
            .iter()
            .map(DegreeCohomology::betti)
            .sum();
        let mut out = vec![Rational::zero(); self.bettis().iter().sum()];
        if !x.is_zero() {
            for (k, c) in self.class_of(cdga, x)?.into_iter().enumerate() {
                out[offset + k] = c;
            }
        }
        Ok(out)
    }
}

/// Cohomology of `cdga` in degrees `0..=max_degree`.
///
/// `b_p = dim ker(d: Λ^p → Λ^{p+1}) − rank(d: Λ^{p−1} → Λ^p)`, cross-checked against the
/// number of representatives chosen as an echelon complement of `B^p` inside `Z^p`.
pub fn cohomology_table(cdga: &Cdga, max_degree: u32) -> Result<CohomologyTable> {
    let bases: Vec<Vec<Monomial>> = (0..=max_degree + 1).map(|p| cdga.basis(p)).collect();
    let mut degrees = Vec::with_capacity(max_degree as usize + 1);
    let mut incoming: Option<RationalMatrix> = None;
    for p in 0..=max_degree {
        let basis = &bases[p as usize];
        let outgoing = cdga.d_matrix_between(basis, &bases[p as usize + 1]);
        let cocycles = outgoing.kernel_basis();
        let coboundaries = match &incoming {
            Some(m) => m.image_basis(),
            None => SubspaceBasis::zero(basis.len()),
        };
        let betti = quotient_dim(&cocycles, &coboundaries)?;

        let mut span = coboundaries.clone();
        let mut representative_coords = Vec::new();
        for z in cocycles.echelon_vectors() {
            if span.try_push(z.clone()) {
                representative_coords.push(z);
            }
        }
        if representative_coords.len() != betti {
            return Err(Error::Internal(format!(
                "degree {p}: {} representatives but Betti number {betti}",
                representative_coords.len()
            )));
        }
        let representatives = representative_coords
            .iter()
            .map(|v| Cdga::element_from_coordinates(basis, v))
            .collect();
        degrees.push(DegreeCohomology {
            degree: p,
            basis: basis.clone(),
            cocycles,
            coboundaries,
            representatives,
            representative_coords,
        });
        incoming = Some(outgoing);
    }
    Ok(CohomologyTable {
        max_degree,
        degrees,
    })
}

fn homogeneous_degree(cdga: &Cdga, x: &Element) -> Result<Option<u32>> {
    cdga.algebra().check_element(x)?;
    if x.is_zero() {
        return Ok(None);
    }
    cdga.algebra()
        .degree(x)
        .map(Some)
        .ok_or(Error::NotHomogeneous)
}

pub fn is_cocycle(cdga: &Cdga, x: &Element) -> Result<bool> {
    homogeneous_degree(cdga, x)?;
    Ok(cdga.apply_d(x).is_zero())
}

/// Whether the cocycle `x` is a coboundary.
pub fn class_is_zero(cdga: &Cdga, x: &Element) -> Result<bool> {
    let Some(p) = homogeneous_degree(cdga, x)? else {
        return Ok(true);
    };
    if !cdga.apply_d(x).is_zero() {
        return Err(Error::NotACocycle);
    }
    if p == 0 {
        return Ok(false);
    }
    let basis = cdga.basis(p);
    let image = cdga
        .d_matrix_between(&cdga.basis(p - 1), &basis)
        .image_basis();
    Ok(image.contains(&cdga.coordinates(&basis, x)?))
}

/// The cohomology ring through degree `max_degree`, with the chosen representatives
/// as basis. Labels are `[rep]`, e.g. `[v^2]`. Products landing above
/// `max_degree` are dropped.
pub fn extract_ring(cdga: &Cdga, max_degree: u32) -> Result<FiniteRing> {
    let table = cohomology_table(cdga, max_degree)?;
    ring_from_table(cdga, &table)
}

pub(crate) fn ring_from_table(cdga: &Cdga, table: &CohomologyTable) -> Result<FiniteRing> {
    let algebra = cdga.algebra();
    let mut basis = Vec::new();
    let mut reps: Vec<(u32, &Element)> = Vec::new();
    let mut offsets = Vec::new();
    for slice in &table.degrees {
        offsets.push(basis.len());
        for rep in &slice.representatives {
            let mut label: String = format!("[{}]", algebra.render(rep));
            if basis.iter().any(|b: &RingBasisElement| b.label == label) {
                label = format!("{label}#{}", basis.len());
            }
            basis.push(RingBasisElement {
                label,
                degree: slice.degree,
            });
            reps.push((slice.degree, rep));
        }
    }
    let n = basis.len();
    let mut products = Vec::new();
    for (i, (di, ri)) in reps.iter().enumerate() {
        for (j, (dj, rj)) in reps.iter().enumerate() {
            let target = di + dj;
            if target > table.max_degree {
                continue;
            }
            let product = algebra.mul(ri, rj);
            if product.is_zero() {
                continue;
            }
            let slice = table.degree(target);
            let coords = cdga.coordinates(&slice.basis, &product)?;
            let class = slice.class_coordinates(&coords).map_err(|e| match e {
                Error::NotACocycle => {
                    Error::Internal("product of cocycles is not a cocycle".into())
                }
                other => other,
            })?;
            if class.iter().all(Zero::is_zero) {
                continue;
            }
            let mut full = alloc::vec![Rational::zero(); n];
            for (k, c) in class.into_iter().enumerate() {
                full[offsets[target as usize] + k] = c;
            }
            products.push(((i, j), full));
        }
    }
    let ring = FiniteRing::new(basis, products)?;
    debug_assert!(ring.product(ring.unit(), ring.unit())[ring.unit()].is_one());
    Ok(ring)
}
