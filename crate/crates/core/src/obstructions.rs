//! Betti-level obstructions: odd-degree parity for Sasakian manifolds, hard
//! Lefschetz, the Gysin sequence of a circle bundle, c-splitting of Hamiltonian
//! bundles and the positive-weight fatness certificate.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::ring::FiniteRing;
use crate::{Error, Rational, Result};

/// Betti numbers `b_0 … b_d` of a `d`-dimensional space; `None` marks an
/// unknown entry. Degrees above `d` are zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BettiVector {
    dimension: usize,
    values: Vec<Option<u64>>,
}

impl BettiVector {
    /// `values` may be shorter than `dimension + 1`; missing entries are unknown.
    pub fn new(dimension: usize, mut values: Vec<Option<u64>>) -> Result<Self> {
        if values.len() > dimension + 1 {
            return Err(Error::InvalidBetti(format!(
                "{} entries for a {dimension}-dimensional space",
                values.len()
            )));
        }
        if values.first() == Some(&Some(0)) {
            return Err(Error::InvalidBetti("b_0 = 0 for a connected space".into()));
        }
        values.resize(dimension + 1, None);
        Ok(BettiVector { dimension, values })
    }

    /// A fully known vector; the dimension is `values.len() - 1`.
    pub fn complete(values: &[u64]) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidBetti("empty Betti vector".into()));
        }
        BettiVector::new(values.len() - 1, values.iter().copied().map(Some).collect())
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn values(&self) -> &[Option<u64>] {
        &self.values
    }

    /// `b_p`, zero above the dimension, `None` if unknown.
    pub fn get(&self, p: usize) -> Option<u64> {
        if p > self.dimension {
            Some(0)
        } else {
            self.values[p]
        }
    }

    pub fn require(&self, p: usize) -> Result<u64> {
        self.get(p).ok_or(Error::UnknownBetti(p))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    /// No parity obstruction found. This is only a necessary condition.
    NoObstruction,
    NotSasakian,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SasakianVerdict {
    pub dimension: usize,
    /// Degrees checked: odd `p ≤ n + 1` for `dimension = 2n + 1`.
    pub checked: Vec<usize>,
    /// Checked degrees with odd `b_p`, with their values.
    pub offending: Vec<(usize, u64)>,
    /// Checked degrees whose Betti number is unknown.
    pub unknown: Vec<usize>,
    pub verdict: Verdict,
}

/// Flags odd `b_p` for odd `p ≤ n + 1` in dimension `2n + 1`. Higher degrees
/// never affect the verdict.
///
/// A closed Sasakian manifold has even `b_p` for odd `p ≤ n`. The extra degree
/// `p = n + 1` is only sound for odd `n`: `S^2 × S^3` is Sasakian with `b_3 = 1`,
/// so a flag raised solely at `p = n + 1` with `n` even is not an obstruction.
pub fn sasaki_parity_test(b: &BettiVector) -> Result<SasakianVerdict> {
    let dimension = b.dimension();
    if dimension % 2 == 0 {
        return Err(Error::EvenDimension(dimension));
    }
    let n = (dimension - 1) / 2;
    let checked: Vec<usize> = (1..=n + 1).step_by(2).collect();
    let mut offending = Vec::new();
    let mut unknown = Vec::new();
    for &p in &checked {
        match b.get(p) {
            Some(v) if v % 2 == 1 => offending.push((p, v)),
            Some(_) => {}
            None => unknown.push(p),
        }
    }
    let verdict = if offending.is_empty() {
        Verdict::NoObstruction
    } else {
        Verdict::NotSasakian
    };
    Ok(SasakianVerdict {
        dimension,
        checked,
        offending,
        unknown,
        verdict,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LefschetzStep {
    pub p: u32,
    pub source_degree: u32,
    pub target_degree: u32,
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
}

impl LefschetzStep {
    pub fn is_isomorphism(&self) -> bool {
        self.source_dim == self.target_dim && self.rank == self.source_dim
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LefschetzReport {
    /// Half the formal dimension.
    pub n: u32,
    pub steps: Vec<LefschetzStep>,
}

impl LefschetzReport {
    pub fn is_lefschetz(&self) -> bool {
        self.steps.iter().all(LefschetzStep::is_isomorphism)
    }

    pub fn first_failure(&self) -> Option<u32> {
        self.steps.iter().find(|s| !s.is_isomorphism()).map(|s| s.p)
    }
}

fn check_degree_two(ring: &FiniteRing, v: &[Rational]) -> Result<()> {
    if v.len() != ring.dim() {
        return Err(Error::DimensionMismatch {
            expected: ring.dim(),
            found: v.len(),
        });
    }
    match ring.degree_of(v) {
        Some(2) => Ok(()),
        None if v.iter().all(Zero::is_zero) => Ok(()),
        _ => Err(Error::NotDegreeTwo),
    }
}

/// For a ring of formal dimension `2n`, checks that `x ↦ v^p x` maps
/// `H^{n−p}` isomorphically onto `H^{n+p}` for `p = 0, …, n`.
pub fn hard_lefschetz_check(ring: &FiniteRing, v: &[Rational]) -> Result<LefschetzReport> {
    check_degree_two(ring, v)?;
    let top = ring.top_degree();
    if top % 2 == 1 {
        return Err(Error::OddTopDegree(top));
    }
    let n = top / 2;
    let steps = (0..=n)
        .map(|p| {
            let power = ring.power(v, p);
            let m = ring.multiplication_matrix(&power, n - p, n + p);
            LefschetzStep {
                p,
                source_degree: n - p,
                target_degree: n + p,
                source_dim: m.cols(),
                target_dim: m.rows(),
                rank: m.rank(),
            }
        })
        .collect();
    Ok(LefschetzReport { n, steps })
}

/// Bookkeeping of the Gysin sequence in one degree `p` of the total space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GysinDegree {
    pub degree: u32,
    /// `rank(L: H^{p−2}(B) → H^p(B))`.
    pub rank_in: usize,
    /// `rank(L: H^{p−1}(B) → H^{p+1}(B))`.
    pub rank_out: usize,
    pub base_betti: usize,
    pub base_betti_below: usize,
    /// `dim coker(L: H^{p−2} → H^p)`, the rank of `π*` into `H^p(E)`.
    pub cokernel: usize,
    /// `dim ker(L: H^{p−1} → H^{p+1})`, the rank of `H^p(E) → H^{p−1}(B)`.
    pub kernel: usize,
}

impl GysinDegree {
    pub fn total_betti(&self) -> usize {
        self.cokernel + self.kernel
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GysinSequence {
    pub degrees: Vec<GysinDegree>,
}

impl GysinSequence {
    /// Rank in plus rank out equals the dimension at every node of the sequence,
    /// and each map `L: H^{p−1} → H^{p+1}` is counted identically from both ends.
    pub fn is_exact(&self) -> bool {
        let nodes = self.degrees.iter().all(|g| {
            g.rank_in + g.cokernel == g.base_betti
                && g.cokernel + g.kernel == g.total_betti()
                && g.kernel + g.rank_out == g.base_betti_below
        });
        let chained = self
            .degrees
            .windows(2)
            .all(|w| w[0].rank_out == w[1].rank_in && w[0].base_betti == w[1].base_betti_below);
        nodes && chained
    }
}

/// The Gysin sequence of the circle bundle over `ring` with Euler class `euler`,
/// in degrees `0..=max_degree`.
pub fn gysin_sequence(
    ring: &FiniteRing,
    euler: &[Rational],
    max_degree: u32,
) -> Result<GysinSequence> {
    check_degree_two(ring, euler)?;
    let rank = |from: i64| -> usize {
        if from < 0 {
            return 0;
        }
        let from = from as u32;
        ring.multiplication_matrix(euler, from, from + 2).rank()
    };
    let betti = |p: i64| -> usize {
        if p < 0 {
            0
        } else {
            ring.betti(p as u32)
        }
    };
    let degrees = (0..=max_degree)
        .map(|p| {
            let p_ = i64::from(p);
            let rank_in = rank(p_ - 2);
            let rank_out = rank(p_ - 1);
            let base_betti = betti(p_);
            let base_betti_below = betti(p_ - 1);
            GysinDegree {
                degree: p,
                rank_in,
                rank_out,
                base_betti,
                base_betti_below,
                cokernel: base_betti - rank_in,
                kernel: base_betti_below - rank_out,
            }
        })
        .collect();
    Ok(GysinSequence { degrees })
}

/// Betti numbers of the circle bundle `E → B` with Euler class `euler`:
/// `b_p(E) = dim coker(L: H^{p−2} → H^p) + dim ker(L: H^{p−1} → H^{p+1})`.
/// `dim E = top degree + 1`; entries above `max_degree` are unknown.
pub fn gysin_betti(ring: &FiniteRing, euler: &[Rational], max_degree: u32) -> Result<BettiVector> {
    let dimension = ring.top_degree() as usize + 1;
    let last = (max_degree as usize).min(dimension) as u32;
    let seq = gysin_sequence(ring, euler, last)?;
    let values = seq
        .degrees
        .iter()
        .map(|g| Some(g.total_betti() as u64))
        .collect();
    BettiVector::new(dimension, values)
}

/// `Σ_i b_i(fibre) · b_{k−i}(base)`: `b_k` of a total space whose cohomology is the
/// tensor product of fibre and base cohomology. Unknown entries multiplied by a
/// zero count as zero.
pub fn c_splitting_betti(fibre: &BettiVector, base: &BettiVector, k: usize) -> Result<u64> {
    let mut total = 0u64;
    for i in 0..=k {
        let (f, b) = (fibre.get(i), base.get(k - i));
        match (f, b) {
            (Some(0), _) | (_, Some(0)) => {}
            (Some(f), Some(b)) => total += f * b,
            (None, _) => return Err(Error::UnknownBetti(i)),
            (_, None) => return Err(Error::UnknownBetti(k - i)),
        }
    }
    Ok(total)
}

/// Integer weights `w_1 … w_{n+1}` of a circle action on `C^{n+1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightVector(Vec<i64>);

impl WeightVector {
    pub fn new(weights: Vec<i64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::EmptyWeights);
        }
        Ok(WeightVector(weights))
    }

    pub fn weights(&self) -> &[i64] {
        &self.0
    }

    /// `2n + 1` for `n + 1` weights.
    pub fn sphere_dimension(&self) -> u32 {
        2 * self.0.len() as u32 - 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FatnessCertificate {
    pub certified: bool,
    /// Exact minimum of `Σ w_i |z_i|²` over the unit sphere, which is `min w_i`.
    pub moment_lower_bound: Rational,
}

/// All weights positive means the pairing `Σ w_i |z_i|²` of the generating field
/// with the Reeb field never vanishes on the unit sphere.
pub fn fatness_weight_certificate(w: &WeightVector) -> FatnessCertificate {
    let min = *w.0.iter().min().expect("weights are non-empty");
    FatnessCertificate {
        certified: min > 0,
        moment_lower_bound: crate::integer(min),
    }
}

/// Human-readable one-line summary of a verdict.
pub fn describe(verdict: &SasakianVerdict) -> String {
    match verdict.verdict {
        Verdict::NotSasakian => {
            let parts: Vec<String> = verdict
                .offending
                .iter()
                .map(|(p, v)| format!("b_{p} = {v}"))
                .collect();
            format!("not Sasakian: odd {}", parts.join(", "))
        }
        Verdict::NoObstruction => String::from("no parity obstruction"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::RingBasisElement;
    use crate::{integer, rational};
    use alloc::vec;

    fn truncated_polynomial(n: u32) -> FiniteRing {
        // H*(CP^n) = Q[v]/v^{n+1}
        let basis: Vec<RingBasisElement> = (0..=n)
            .map(|k| RingBasisElement {
                label: format!("v{k}"),
                degree: 2 * k,
            })
            .collect();
        let size = basis.len();
        let mut products = Vec::new();
        for i in 1..size {
            for j in 1..size {
                if i + j < size {
                    let mut c = vec![integer(0); size];
                    c[i + j] = integer(1);
                    products.push(((i, j), c));
                }
            }
        }
        FiniteRing::new(basis, products).unwrap()
    }

    #[test]
    fn parity_examples() {
        let b = BettiVector::new(13, [1, 0, 1, 3].map(Some).to_vec()).unwrap();
        let v = sasaki_parity_test(&b).unwrap();
        assert_eq!(v.verdict, Verdict::NotSasakian);
        assert_eq!(v.checked, [1, 3, 5, 7]);
        assert_eq!(v.offending, [(3, 3)]);
        assert_eq!(v.unknown, [5, 7]);

        let s5 = BettiVector::complete(&[1, 0, 0, 0, 0, 1]).unwrap();
        assert_eq!(
            sasaki_parity_test(&s5).unwrap().verdict,
            Verdict::NoObstruction
        );

        let b = BettiVector::complete(&[1, 0, 0, 1, 1, 0, 0, 1]).unwrap();
        let v = sasaki_parity_test(&b).unwrap();
        assert_eq!(v.checked, [1, 3]);
        assert_eq!(v.offending, [(3, 1)]);

        let even = BettiVector::complete(&[1, 0, 1, 0, 1]).unwrap();
        assert_eq!(sasaki_parity_test(&even), Err(Error::EvenDimension(4)));
    }

    #[test]
    fn lefschetz_on_cp2() {
        let r = truncated_polynomial(2);
        let report = hard_lefschetz_check(&r, &r.basis_vector(1)).unwrap();
        assert!(report.is_lefschetz());
        assert_eq!(report.steps.len(), 3);
        let zero = vec![integer(0); r.dim()];
        // H^1 = H^3 = 0, so the first non-trivial step is p = 2
        let report = hard_lefschetz_check(&r, &zero).unwrap();
        assert_eq!(report.first_failure(), Some(2));
        let s2 = truncated_polynomial(1);
        let report = hard_lefschetz_check(&s2, &vec![integer(0); 2]).unwrap();
        assert_eq!(report.first_failure(), Some(1));
        assert_eq!(
            hard_lefschetz_check(&r, &r.basis_vector(2)),
            Err(Error::NotDegreeTwo)
        );
    }

    #[test]
    fn gysin_examples() {
        let s2 = truncated_polynomial(1);
        let b = gysin_betti(&s2, &s2.basis_vector(1), 3).unwrap();
        assert_eq!(b.values(), [1, 0, 0, 1].map(Some));
        let cp2 = truncated_polynomial(2);
        let b = gysin_betti(&cp2, &cp2.basis_vector(1), 5).unwrap();
        assert_eq!(b.values(), [1, 0, 0, 0, 0, 1].map(Some));
        let zero = vec![integer(0); cp2.dim()];
        let b = gysin_betti(&cp2, &zero, 5).unwrap();
        assert_eq!(b.values(), [1, 1, 1, 1, 1, 1].map(Some));
        assert!(gysin_sequence(&cp2, &cp2.basis_vector(1), 5)
            .unwrap()
            .is_exact());
        // a scaled Euler class gives the same rational Betti numbers (lens spaces)
        let scaled: Vec<Rational> = cp2
            .basis_vector(1)
            .iter()
            .map(|a| a * rational(3, 1))
            .collect();
        assert_eq!(
            gysin_betti(&cp2, &scaled, 5).unwrap(),
            gysin_betti(&cp2, &cp2.basis_vector(1), 5).unwrap()
        );
    }

    #[test]
    fn c_splitting_examples() {
        let fibre = BettiVector::new(12, vec![Some(1), Some(0), None, Some(3)]).unwrap();
        let s2 = BettiVector::complete(&[1, 0, 1]).unwrap();
        assert_eq!(c_splitting_betti(&fibre, &s2, 3), Ok(3));
        assert_eq!(
            c_splitting_betti(&fibre, &s2, 2),
            Err(Error::UnknownBetti(2))
        );
        let point = BettiVector::complete(&[1]).unwrap();
        assert_eq!(c_splitting_betti(&point, &s2, 2), Ok(1));
        let s3 = BettiVector::complete(&[1, 0, 0, 1]).unwrap();
        assert_eq!(c_splitting_betti(&s3, &s2, 5), Ok(1));
        assert_eq!(c_splitting_betti(&s2, &s3, 5), Ok(1));
    }

    #[test]
    fn fatness_examples() {
        let c = fatness_weight_certificate(&WeightVector::new(vec![1, 1]).unwrap());
        assert!(c.certified);
        assert_eq!(c.moment_lower_bound, integer(1));
        let c = fatness_weight_certificate(&WeightVector::new(vec![2, 3, 5]).unwrap());
        assert_eq!((c.certified, c.moment_lower_bound), (true, integer(2)));
        let c = fatness_weight_certificate(&WeightVector::new(vec![1, 0]).unwrap());
        assert_eq!((c.certified, c.moment_lower_bound), (false, integer(0)));
        assert_eq!(WeightVector::new(vec![]), Err(Error::EmptyWeights));
    }

    #[test]
    fn betti_vector_validation() {
        assert!(BettiVector::new(2, vec![Some(1); 4]).is_err());
        assert!(BettiVector::complete(&[0, 1]).is_err());
        let b = BettiVector::new(4, vec![Some(1)]).unwrap();
        assert_eq!(b.get(3), None);
        assert_eq!(b.get(9), Some(0));
    }
}
