#![allow(dead_code)]

use cdga_core::{cdga::Cdga, class_is_zero, integer, rational, Element, FreeAlgebra, Rational};
use num_traits::Zero;
use rand::Rng;

pub fn random_rational<R: Rng>(rng: &mut R) -> Rational {
    rational(rng.gen_range(-4..=4), rng.gen_range(1..=3))
}

/// Random homogeneous element of degree `p` with up to `terms` monomials.
pub fn random_element<R: Rng>(cdga: &Cdga, p: u32, terms: usize, rng: &mut R) -> Element {
    let basis = cdga.basis(p);
    let mut e = Element::zero();
    if basis.is_empty() {
        return e;
    }
    for _ in 0..rng.gen_range(1..=terms) {
        let m = basis[rng.gen_range(0..basis.len())].clone();
        e.add_term(m, random_rational(rng));
    }
    e
}

fn extend(cdga: &Cdga, name: String, degree: u32, dy: Element) -> Cdga {
    let names: Vec<(String, u32)> = cdga
        .algebra()
        .generators()
        .iter()
        .map(|g| (g.name.clone(), g.degree))
        .chain([(name, degree)])
        .collect();
    let mut differential = cdga.differential().to_vec();
    differential.push(dy);
    Cdga::new(FreeAlgebra::new(names).unwrap(), differential).unwrap()
}

/// Random cocycle of degree `p`: a combination of a kernel basis of `d_p`.
pub fn random_cocycle<R: Rng>(cdga: &Cdga, p: u32, rng: &mut R) -> Element {
    let basis = cdga.basis(p);
    let kernel = cdga.d_matrix(p).kernel_basis();
    let mut coords = vec![Rational::zero(); basis.len()];
    for v in kernel.vectors() {
        let c = integer(rng.gen_range(-3..=3));
        for (x, y) in coords.iter_mut().zip(v) {
            *x += &c * y;
        }
    }
    Cdga::element_from_coordinates(&basis, &coords)
}

/// Random minimal algebra with generators of degrees 2, 3 and 4 only.
/// Degree-3 differentials are quadratic in the degree-2 generators; degree-4
/// differentials are random degree-5 cocycles, all decomposable.
pub fn random_minimal<R: Rng>(rng: &mut R) -> Cdga {
    let mut cdga = Cdga::trivial();
    for k in 0..rng.gen_range(1..=3) {
        cdga = extend(&cdga, format!("x{k}"), 2, Element::zero());
    }
    for k in 0..rng.gen_range(0..=2) {
        let dy = random_cocycle(&cdga, 4, rng);
        cdga = extend(&cdga, format!("y{k}"), 3, dy);
    }
    for k in 0..rng.gen_range(0..=2) {
        let dw = random_cocycle(&cdga, 5, rng);
        cdga = extend(&cdga, format!("w{k}"), 4, dw);
    }
    cdga
}

/// A degree-4 cocycle with non-zero class, if a few random attempts find one.
pub fn random_nonzero_class4<R: Rng>(cdga: &Cdga, rng: &mut R) -> Option<Element> {
    for _ in 0..8 {
        let z = random_cocycle(cdga, 4, rng);
        if !z.is_zero() && !class_is_zero(cdga, &z).unwrap() {
            return Some(z);
        }
    }
    None
}

/// Random CDGA with generators of degrees 1 to 4 whose differentials are sums
/// of exact terms and products of closed generators.
pub fn random_cdga<R: Rng>(rng: &mut R) -> Cdga {
    let n = rng.gen_range(1..=5);
    let mut degrees: Vec<u32> = (0..n).map(|_| rng.gen_range(1..=4)).collect();
    degrees.sort_unstable();
    let mut cdga = Cdga::trivial();
    for (k, &deg) in degrees.iter().enumerate() {
        let mut dy = Element::zero();
        if rng.gen_bool(0.7) {
            dy = random_cocycle(&cdga, deg + 1, rng);
        }
        if rng.gen_bool(0.3) {
            let z = random_element(&cdga, deg, 2, rng);
            dy += &cdga.apply_d(&z);
        }
        cdga = extend(&cdga, format!("g{k}"), deg, dy);
    }
    cdga
}

/// Rank by plain Gaussian elimination on a dense matrix.
pub fn dense_rank(mut m: Vec<Vec<Rational>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for r in 0..rows {
            if r != rank && !m[r][c].is_zero() {
                let f = &m[r][c] / &m[rank][c];
                for j in c..cols {
                    let t = &f * &m[rank][j];
                    m[r][j] -= t;
                }
            }
        }
        rank += 1;
    }
    rank
}
