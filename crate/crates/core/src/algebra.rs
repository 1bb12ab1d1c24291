//! Free graded-commutative algebras `ΛV = S(V^even) ⊗ Λ(V^odd)` over the rationals.
//!
//! Generators are identified by their position in the declaration order of a
//! [`FreeAlgebra`]. That order is the fixed total order used for canonical
//! monomials, for basis enumeration and for matrix column orders.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use alloc::{format, vec};
use core::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use num_traits::{One, Signed, Zero};

use crate::{Error, Rational, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    pub degree: u32,
}

impl Generator {
    pub fn is_odd(&self) -> bool {
        self.degree % 2 == 1
    }
}

/// A monomial in canonical form: `(generator index, exponent)` pairs sorted by
/// index, every exponent at least 1 and odd generators with exponent exactly 1.
/// The empty monomial is the unit.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(Vec<(usize, u32)>);

impl Monomial {
    pub fn unit() -> Self {
        Monomial(Vec::new())
    }

    pub fn generator(index: usize) -> Self {
        Monomial(vec![(index, 1)])
    }

    pub fn power(index: usize, exponent: u32) -> Self {
        if exponent == 0 {
            Monomial::unit()
        } else {
            Monomial(vec![(index, exponent)])
        }
    }

    /// Builds a monomial from `(index, exponent)` pairs that are already sorted,
    /// strictly increasing in index and carry positive exponents.
    ///
    /// Oddness of generators is not known here; [`FreeAlgebra::monomial`] performs
    /// the full validation.
    pub fn from_sorted(factors: Vec<(usize, u32)>) -> Option<Self> {
        let increasing = factors.windows(2).all(|w| w[0].0 < w[1].0);
        let positive = factors.iter().all(|&(_, e)| e > 0);
        (increasing && positive).then_some(Monomial(factors))
    }

    pub fn factors(&self) -> &[(usize, u32)] {
        &self.0
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    /// Word length: the number of generator factors counted with multiplicity.
    pub fn length(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    /// The generator index if this monomial is a single generator to the first power.
    pub fn as_generator(&self) -> Option<usize> {
        match self.0.as_slice() {
            [(index, 1)] => Some(*index),
            _ => None,
        }
    }

    pub fn exponent_of(&self, index: usize) -> u32 {
        self.0
            .iter()
            .find(|&&(i, _)| i == index)
            .map_or(0, |&(_, e)| e)
    }

    pub fn max_index(&self) -> Option<usize> {
        self.0.last().map(|&(i, _)| i)
    }

    /// Applies `f` to every generator index. The caller guarantees `f` is strictly
    /// increasing on the indices involved, so the result stays canonical.
    pub(crate) fn reindexed(&self, f: impl Fn(usize) -> usize) -> Monomial {
        Monomial(self.0.iter().map(|&(i, e)| (f(i), e)).collect())
    }

    /// Splits the monomial at factor block `block`: returns `(prefix, suffix)`
    /// with the block itself excluded.
    fn split_around(&self, block: usize) -> (Monomial, Monomial) {
        (
            Monomial(self.0[..block].to_vec()),
            Monomial(self.0[block + 1..].to_vec()),
        )
    }
}

/// A finite linear combination of monomials with non-zero rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Element {
    terms: BTreeMap<Monomial, Rational>,
}

impl Element {
    pub fn zero() -> Self {
        Element::default()
    }

    pub fn one() -> Self {
        Element::from_monomial(Monomial::unit(), Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Element::from_monomial(Monomial::unit(), c)
    }

    pub fn from_monomial(m: Monomial, c: Rational) -> Self {
        let mut e = Element::zero();
        e.add_term(m, c);
        e
    }

    pub fn monomial(m: Monomial) -> Self {
        Element::from_monomial(m, Rational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Adds `c·m`, dropping the term if the coefficient cancels.
    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            alloc::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Element {
        if c.is_zero() {
            return Element::zero();
        }
        Element {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    fn max_index(&self) -> Option<usize> {
        self.terms.keys().filter_map(Monomial::max_index).max()
    }

    pub(crate) fn reindexed(&self, f: impl Fn(usize) -> usize) -> Element {
        Element {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.reindexed(&f), c.clone()))
                .collect(),
        }
    }
}

impl AddAssign<&Element> for Element {
    fn add_assign(&mut self, rhs: &Element) {
        for (m, c) in rhs.terms() {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&Element> for Element {
    fn sub_assign(&mut self, rhs: &Element) {
        for (m, c) in rhs.terms() {
            self.add_term(m.clone(), -c);
        }
    }
}

impl Add<&Element> for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Element {
    type Output = Element;
    fn add(mut self, rhs: Element) -> Element {
        self += &rhs;
        self
    }
}

impl Sub<&Element> for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for Element {
    type Output = Element;
    fn sub(mut self, rhs: Element) -> Element {
        self -= &rhs;
        self
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        Element {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Element {
    type Output = Element;
    fn neg(self) -> Element {
        -&self
    }
}

/// The free graded-commutative algebra on a declared list of generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct FreeAlgebra {
    generators: Vec<Generator>,
}

impl FreeAlgebra {
    pub fn new<S: Into<String>>(generators: impl IntoIterator<Item = (S, u32)>) -> Result<Self> {
        let mut out: Vec<Generator> = Vec::new();
        for (name, degree) in generators {
            let name = name.into();
            if name.is_empty() {
                return Err(Error::EmptyGeneratorName);
            }
            if degree == 0 {
                return Err(Error::ZeroDegreeGenerator(name));
            }
            if out.iter().any(|g| g.name == name) {
                return Err(Error::DuplicateGenerator(name));
            }
            out.push(Generator { name, degree });
        }
        Ok(FreeAlgebra { generators: out })
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn degree_of_generator(&self, index: usize) -> u32 {
        self.generators[index].degree
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn name(&self, index: usize) -> &str {
        &self.generators[index].name
    }

    /// The element consisting of the single generator `name`.
    pub fn gen(&self, name: &str) -> Result<Element> {
        self.index_of(name)
            .map(|i| Element::monomial(Monomial::generator(i)))
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    /// Validated canonical monomial from `(index, exponent)` pairs in any order;
    /// returns `None` when an odd generator appears squared (the monomial is zero).
    /// Repeated indices are multiplied together with Koszul signs, so use
    /// [`FreeAlgebra::normalize`] when order matters.
    pub fn monomial(&self, factors: &[(usize, u32)]) -> Result<Option<Monomial>> {
        let mut word = Vec::new();
        for &(i, e) in factors {
            for _ in 0..e {
                word.push(i);
            }
        }
        Ok(self.normalize(&word)?.map(|(_, m)| m))
    }

    pub fn monomial_degree(&self, m: &Monomial) -> u32 {
        m.factors()
            .iter()
            .map(|&(i, e)| e * self.generators[i].degree)
            .sum()
    }

    /// Sorts a word of generators into canonical order.
    ///
    /// Returns `None` when an odd generator repeats, since the product is then
    /// zero; otherwise the sign of the graded permutation, where each
    /// transposition of adjacent `a`, `b` contributes `(−1)^{|a||b|}`.
    pub fn normalize(&self, factors: &[usize]) -> Result<Option<(i8, Monomial)>> {
        for &i in factors {
            self.check_index(i)?;
        }
        let mut negative = false;
        for (pos, &a) in factors.iter().enumerate() {
            for &b in &factors[pos + 1..] {
                if a == b && self.generators[a].is_odd() {
                    return Ok(None);
                }
                if a > b && self.generators[a].is_odd() && self.generators[b].is_odd() {
                    negative = !negative;
                }
            }
        }
        let mut counts: BTreeMap<usize, u32> = BTreeMap::new();
        for &i in factors {
            *counts.entry(i).or_default() += 1;
        }
        let sign = if negative { -1 } else { 1 };
        Ok(Some((sign, Monomial(counts.into_iter().collect()))))
    }

    /// [`FreeAlgebra::normalize`] on generator names.
    pub fn normalize_names(&self, factors: &[&str]) -> Result<Option<(i8, Monomial)>> {
        let indices = factors
            .iter()
            .map(|n| {
                self.index_of(n)
                    .ok_or_else(|| Error::UnknownGenerator(n.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        self.normalize(&indices)
    }

    fn check_index(&self, index: usize) -> Result<()> {
        if index < self.generators.len() {
            Ok(())
        } else {
            Err(Error::ForeignElement {
                index,
                len: self.generators.len(),
            })
        }
    }

    /// Fails if `e` mentions a generator this algebra does not have.
    pub fn check_element(&self, e: &Element) -> Result<()> {
        match e.max_index() {
            Some(i) => self.check_index(i),
            None => Ok(()),
        }
    }

    /// Product of two canonical monomials with its Koszul sign, or `None` if it vanishes.
    pub fn mul_monomials(&self, a: &Monomial, b: &Monomial) -> Option<(bool, Monomial)> {
        let mut negative = false;
        let mut merged = Vec::with_capacity(a.0.len() + b.0.len());
        // parity of the odd-degree part of `a` strictly above the current `b` factor
        let (mut ia, mut ib) = (0, 0);
        let odd_weight = |i: usize, e: u32| self.generators[i].is_odd() && e % 2 == 1;
        let mut a_odd_remaining: u32 =
            a.0.iter().filter(|&&(i, e)| odd_weight(i, e)).count() as u32;
        while ia < a.0.len() || ib < b.0.len() {
            let next_a = a.0.get(ia);
            let next_b = b.0.get(ib);
            match (next_a, next_b) {
                (Some(&(ga, ea)), Some(&(gb, eb))) if ga == gb => {
                    if self.generators[ga].is_odd() {
                        return None;
                    }
                    merged.push((ga, ea + eb));
                    ia += 1;
                    ib += 1;
                }
                (Some(&(ga, ea)), Some(&(gb, _))) if ga < gb => {
                    if odd_weight(ga, ea) {
                        a_odd_remaining -= 1;
                    }
                    merged.push((ga, ea));
                    ia += 1;
                }
                (Some(_), Some(&(gb, eb))) | (None, Some(&(gb, eb))) => {
                    // b's factor moves left past every remaining factor of a
                    if odd_weight(gb, eb) && a_odd_remaining % 2 == 1 {
                        negative = !negative;
                    }
                    merged.push((gb, eb));
                    ib += 1;
                }
                (Some(&(ga, ea)), None) => {
                    merged.push((ga, ea));
                    ia += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        Some((negative, Monomial(merged)))
    }

    /// Product in `ΛV`; fails if either operand mentions a foreign generator.
    pub fn multiply(&self, a: &Element, b: &Element) -> Result<Element> {
        self.check_element(a)?;
        self.check_element(b)?;
        Ok(self.mul(a, b))
    }

    pub(crate) fn mul(&self, a: &Element, b: &Element) -> Element {
        let mut out = Element::zero();
        for (ma, ca) in a.terms() {
            for (mb, cb) in b.terms() {
                if let Some((negative, m)) = self.mul_monomials(ma, mb) {
                    let c = ca * cb;
                    out.add_term(m, if negative { -c } else { c });
                }
            }
        }
        out
    }

    pub fn pow(&self, a: &Element, k: u32) -> Element {
        let mut out = Element::one();
        for _ in 0..k {
            out = self.mul(&out, a);
        }
        out
    }

    /// The common degree of all terms; `None` for zero or inhomogeneous elements.
    pub fn degree(&self, e: &Element) -> Option<u32> {
        let mut degrees = e.terms().map(|(m, _)| self.monomial_degree(m));
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous(&self, e: &Element) -> bool {
        e.is_zero() || self.degree(e).is_some()
    }

    /// Succeeds if `e` is zero or homogeneous of degree `expected`.
    pub fn check_degree(&self, e: &Element, expected: u32) -> Result<()> {
        self.check_element(e)?;
        if e.is_zero() {
            return Ok(());
        }
        match self.degree(e) {
            None => Err(Error::NotHomogeneous),
            Some(d) if d != expected => Err(Error::DegreeMismatch { expected, found: d }),
            Some(_) => Ok(()),
        }
    }

    /// All degree-`p` monomials in canonical order.
    pub fn basis(&self, p: u32) -> Vec<Monomial> {
        let all: Vec<usize> = (0..self.generators.len()).collect();
        self.basis_in(p, &all)
    }

    /// All degree-`p` monomials in the generators listed in `subset`, in canonical order.
    pub fn basis_in(&self, p: u32, subset: &[usize]) -> Vec<Monomial> {
        let mut indices: Vec<usize> = subset.to_vec();
        indices.sort_unstable();
        indices.dedup();
        let mut out = Vec::new();
        let mut current = Vec::new();
        self.enumerate(&indices, p, &mut current, &mut out);
        out.sort();
        out
    }

    fn enumerate(
        &self,
        indices: &[usize],
        remaining: u32,
        current: &mut Vec<(usize, u32)>,
        out: &mut Vec<Monomial>,
    ) {
        if remaining == 0 {
            out.push(Monomial(current.clone()));
            return;
        }
        let Some((&first, rest)) = indices.split_first() else {
            return;
        };
        let g = &self.generators[first];
        let max_exp = if g.is_odd() { 1 } else { remaining / g.degree };
        for e in 0..=max_exp.min(remaining / g.degree) {
            if e > 0 {
                current.push((first, e));
            }
            self.enumerate(rest, remaining - e * g.degree, current, out);
            if e > 0 {
                current.pop();
            }
        }
    }

    /// Splits a monomial into `(prefix, g^{e-1}, suffix)` pieces around factor block `block`.
    pub(crate) fn leibniz_pieces(
        &self,
        m: &Monomial,
        block: usize,
    ) -> (Monomial, Monomial, Monomial, u32) {
        let (prefix, suffix) = m.split_around(block);
        let (g, e) = m.0[block];
        let before = self.monomial_degree(&prefix);
        let lowered = Monomial::power(g, e - 1);
        (prefix, lowered, suffix, before)
    }

    pub fn render_monomial(&self, m: &Monomial) -> String {
        if m.is_unit() {
            return "1".to_string();
        }
        let parts: Vec<String> = m
            .factors()
            .iter()
            .map(|&(i, e)| {
                if e == 1 {
                    self.generators[i].name.clone()
                } else {
                    format!("{}^{}", self.generators[i].name, e)
                }
            })
            .collect();
        parts.join("*")
    }

    /// Text form in the algebra DSL syntax, e.g. `2*v^2 - 1/3*x*y`.
    pub fn render(&self, e: &Element) -> String {
        if e.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (m, c)) in e.terms().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            if m.is_unit() {
                out.push_str(&abs.to_string());
            } else if abs.is_one() {
                out.push_str(&self.render_monomial(m));
            } else {
                out.push_str(&format!("{}*{}", abs, self.render_monomial(m)));
            }
        }
        out
    }
}
