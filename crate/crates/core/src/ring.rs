//! Finite-dimensional graded rings given by structure constants.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use alloc::{format, vec};

use num_traits::{One, Zero};

use crate::linalg::RationalMatrix;
use crate::{Error, Rational, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingBasisElement {
    pub label: String,
    pub degree: u32,
}

/// A connected graded-commutative ring `H = ⊕ H^p` with a chosen basis.
///
/// The single degree-0 basis element is the unit; its products are implied.
/// `products[(i, j)]` holds the coordinates of `e_i · e_j` over the whole basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteRing {
    basis: Vec<RingBasisElement>,
    products: BTreeMap<(usize, usize), Vec<Rational>>,
    unit: usize,
}

impl FiniteRing {
    /// Validates and builds the ring. Products not listed are zero, except those
    /// with the unit. Checks degree additivity, graded commutativity and
    /// associativity.
    pub fn new(
        basis: Vec<RingBasisElement>,
        products: impl IntoIterator<Item = ((usize, usize), Vec<Rational>)>,
    ) -> Result<Self> {
        let n = basis.len();
        let units: Vec<usize> = (0..n).filter(|&i| basis[i].degree == 0).collect();
        let unit = match units.as_slice() {
            [u] => *u,
            [] => return Err(Error::InvalidRing("no degree-0 basis element".into())),
            _ => {
                return Err(Error::InvalidRing(
                    "more than one degree-0 basis element".into(),
                ))
            }
        };
        for (i, b) in basis.iter().enumerate() {
            if basis[..i].iter().any(|c| c.label == b.label) {
                return Err(Error::InvalidRing(format!("duplicate label `{}`", b.label)));
            }
        }
        let mut table = BTreeMap::new();
        for ((i, j), coords) in products {
            if i >= n || j >= n {
                return Err(Error::InvalidRing(format!(
                    "product index ({i}, {j}) out of range"
                )));
            }
            if coords.len() != n {
                return Err(Error::InvalidRing(format!(
                    "product ({i}, {j}) has {} coordinates, expected {n}",
                    coords.len()
                )));
            }
            let target = basis[i].degree + basis[j].degree;
            if let Some(k) = (0..n).find(|&k| !coords[k].is_zero() && basis[k].degree != target) {
                return Err(Error::InvalidRing(format!(
                    "product ({i}, {j}) has a component on `{}` outside degree {target}",
                    basis[k].label
                )));
            }
            if table.insert((i, j), coords).is_some() {
                return Err(Error::InvalidRing(format!(
                    "product ({i}, {j}) listed twice"
                )));
            }
        }
        for k in 0..n {
            let mut e = vec![Rational::zero(); n];
            e[k] = Rational::one();
            for key in [(unit, k), (k, unit)] {
                match table.get(&key) {
                    Some(given) if *given != e => {
                        return Err(Error::InvalidRing(format!(
                            "unit product with `{}` is not the identity",
                            basis[k].label
                        )))
                    }
                    Some(_) => {}
                    None => {
                        table.insert(key, e.clone());
                    }
                }
            }
        }
        table.retain(|_, v| v.iter().any(|a| !a.is_zero()));
        let ring = FiniteRing {
            basis,
            products: table,
            unit,
        };
        if let Some((i, j)) = ring.commutativity_violation() {
            return Err(Error::InvalidRing(format!(
                "products of `{}` and `{}` violate graded commutativity",
                ring.basis[i].label, ring.basis[j].label
            )));
        }
        if let Some((i, j, k)) = ring.associativity_violation() {
            return Err(Error::InvalidRing(format!(
                "products of `{}`, `{}` and `{}` are not associative",
                ring.basis[i].label, ring.basis[j].label, ring.basis[k].label
            )));
        }
        Ok(ring)
    }

    pub fn basis(&self) -> &[RingBasisElement] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.basis.iter().position(|b| b.label == label)
    }

    pub fn top_degree(&self) -> u32 {
        self.basis.iter().map(|b| b.degree).max().unwrap_or(0)
    }

    /// Basis indices of degree `p`, in basis order.
    pub fn degree_indices(&self, p: u32) -> Vec<usize> {
        (0..self.basis.len())
            .filter(|&i| self.basis[i].degree == p)
            .collect()
    }

    pub fn betti(&self, p: u32) -> usize {
        self.basis.iter().filter(|b| b.degree == p).count()
    }

    pub fn bettis(&self) -> Vec<usize> {
        (0..=self.top_degree()).map(|p| self.betti(p)).collect()
    }

    /// The non-zero structure constants, keyed by ordered basis pairs.
    pub fn products(&self) -> &BTreeMap<(usize, usize), Vec<Rational>> {
        &self.products
    }

    pub fn product(&self, i: usize, j: usize) -> Vec<Rational> {
        self.products
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(|| vec![Rational::zero(); self.basis.len()])
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.basis.len()];
        v[i] = Rational::one();
        v
    }

    pub fn unit_vector(&self) -> Vec<Rational> {
        self.basis_vector(self.unit)
    }

    /// Bilinear product of coordinate vectors.
    pub fn multiply(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let n = self.basis.len();
        assert!(x.len() == n && y.len() == n, "vector length mismatch");
        let mut out = vec![Rational::zero(); n];
        for ((i, j), coords) in &self.products {
            if x[*i].is_zero() || y[*j].is_zero() {
                continue;
            }
            let c = &x[*i] * &y[*j];
            for (o, a) in out.iter_mut().zip(coords) {
                if !a.is_zero() {
                    *o += &c * a;
                }
            }
        }
        out
    }

    pub fn power(&self, x: &[Rational], k: u32) -> Vec<Rational> {
        let mut out = self.unit_vector();
        for _ in 0..k {
            out = self.multiply(&out, x);
        }
        out
    }

    /// The common degree of the non-zero coordinates; `None` for zero or mixed vectors.
    pub fn degree_of(&self, x: &[Rational]) -> Option<u32> {
        let mut degrees = (0..self.basis.len())
            .filter(|&i| !x[i].is_zero())
            .map(|i| self.basis[i].degree);
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    /// Matrix of `x ↦ c·x` from `H^from` to `H^{from + |c|}`, in degree-slice coordinates.
    pub fn multiplication_matrix(&self, c: &[Rational], from: u32, to: u32) -> RationalMatrix {
        let source = self.degree_indices(from);
        let target = self.degree_indices(to);
        let mut m = RationalMatrix::zeros(target.len(), source.len());
        for (col, &s) in source.iter().enumerate() {
            let image = self.multiply(c, &self.basis_vector(s));
            for (row, &t) in target.iter().enumerate() {
                m.set(row, col, image[t].clone());
            }
        }
        m
    }

    /// First ordered basis pair `(i, j)` with `e_i e_j ≠ (−1)^{|i||j|} e_j e_i`.
    pub fn commutativity_violation(&self) -> Option<(usize, usize)> {
        let n = self.basis.len();
        for i in 0..n {
            for j in i + 1..n {
                let ij = self.product(i, j);
                let mut ji = self.product(j, i);
                if (self.basis[i].degree * self.basis[j].degree) % 2 == 1 {
                    for a in &mut ji {
                        *a = -a.clone();
                    }
                }
                if ij != ji {
                    return Some((i, j));
                }
            }
            let ii = self.product(i, i);
            if self.basis[i].degree % 2 == 1 && ii.iter().any(|a| !a.is_zero()) {
                return Some((i, i));
            }
        }
        None
    }

    /// First basis triple violating `(e_i e_j) e_k = e_i (e_j e_k)`.
    pub fn associativity_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.basis.len();
        for i in 0..n {
            let ei = self.basis_vector(i);
            for j in 0..n {
                let ij = self.product(i, j);
                for k in 0..n {
                    let left = self.multiply(&ij, &self.basis_vector(k));
                    let right = self.multiply(&ei, &self.product(j, k));
                    if left != right {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::integer;

    fn b(label: &str, degree: u32) -> RingBasisElement {
        RingBasisElement {
            label: label.into(),
            degree,
        }
    }

    /// H*(S² × S²): 1, a, b, ab with a² = b² = 0.
    fn s2s2() -> FiniteRing {
        let basis = vec![b("1", 0), b("a", 2), b("b", 2), b("ab", 4)];
        let top = vec![integer(0), integer(0), integer(0), integer(1)];
        FiniteRing::new(basis, [((1, 2), top.clone()), ((2, 1), top)]).unwrap()
    }

    #[test]
    fn unit_products_are_implied() {
        let r = s2s2();
        assert_eq!(r.product(0, 1), r.basis_vector(1));
        assert_eq!(r.product(3, 0), r.basis_vector(3));
        assert!(r.associativity_violation().is_none());
        assert_eq!(r.bettis(), [1, 0, 2, 0, 1]);
    }

    #[test]
    fn rejects_non_commutative() {
        let basis = vec![b("1", 0), b("a", 2), b("b", 2), b("ab", 4)];
        let top = vec![integer(0), integer(0), integer(0), integer(1)];
        let err = FiniteRing::new(basis, [((1, 2), top)]).unwrap_err();
        assert!(matches!(err, Error::InvalidRing(_)));
    }

    #[test]
    fn rejects_non_associative() {
        let basis = vec![b("1", 0), b("a", 2), b("e", 2), b("b", 4), b("c", 6)];
        let unit = |k: usize| {
            (0..5)
                .map(|i| integer(i64::from(i == k)))
                .collect::<Vec<_>>()
        };
        let err = FiniteRing::new(
            basis,
            [((1, 1), unit(3)), ((2, 3), unit(4)), ((3, 2), unit(4))],
        )
        .unwrap_err();
        assert!(matches!(err, Error::InvalidRing(m) if m.contains("associative")));
    }

    #[test]
    fn rejects_degree_violation() {
        let basis = vec![b("1", 0), b("a", 2), b("c", 3)];
        let wrong = vec![integer(0), integer(0), integer(1)];
        assert!(FiniteRing::new(basis, [((1, 1), wrong)]).is_err());
    }

    #[test]
    fn rejects_missing_unit() {
        assert!(FiniteRing::new(vec![b("a", 2)], []).is_err());
    }

    #[test]
    fn multiplication_matrix_of_class() {
        let r = s2s2();
        let a = r.basis_vector(1);
        let m = r.multiplication_matrix(&a, 2, 4);
        assert_eq!(m.to_dense(), vec![vec![integer(0), integer(1)]]);
        assert_eq!(r.degree_of(&a), Some(2));
        assert_eq!(r.degree_of(&r.product(1, 2)), Some(4));
    }
}
