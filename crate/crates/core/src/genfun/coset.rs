use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::ModularGF;
use crate::padic::{Exact, FieldDesc, ResidueRing, RingElem};
use crate::ratfunc::{fmt_coeff, igr, RationalFunction};
use crate::{Error, Result};

/// `z^A` for a coset `A = a + p^j R` or a single point `A = {a}`.
///
/// A coset is stored as its representative in `R/p^j`, so the level is the
/// representative's precision. Points are exact field elements.
#[derive(Clone, PartialEq, Eq)]
pub enum CosetTerm {
    Coset(RingElem),
    Point(Exact),
}

impl CosetTerm {
    /// `a + p^j R`.
    pub fn coset(a: &RingElem, j: u32) -> Result<Self> {
        if a.k() < j {
            return Err(Error::PrecisionMismatch(a.k(), j));
        }
        Ok(CosetTerm::Coset(a.reduce(j)))
    }

    /// `p^j R`.
    pub fn ideal(field: &FieldDesc, j: u32) -> Result<Self> {
        Ok(CosetTerm::Coset(RingElem::zero(field, j)?))
    }

    pub fn point(a: Exact) -> Result<Self> {
        if !a.is_integral() {
            return Err(Error::Invalid("coset representatives must be p-integral".into()));
        }
        Ok(CosetTerm::Point(a))
    }

    pub fn field(&self) -> &FieldDesc {
        match self {
            CosetTerm::Coset(a) => a.field(),
            CosetTerm::Point(a) => a.field(),
        }
    }

    /// `Some(j)` for a coset of level `j`, `None` for a point.
    pub fn level(&self) -> Option<u32> {
        match self {
            CosetTerm::Coset(a) => Some(a.k()),
            CosetTerm::Point(_) => None,
        }
    }

    /// The coset `A + B`.
    pub fn add(&self, other: &Self) -> Self {
        match (self, other) {
            (CosetTerm::Point(a), CosetTerm::Point(b)) => CosetTerm::Point(a + b),
            (CosetTerm::Coset(a), CosetTerm::Point(b)) | (CosetTerm::Point(b), CosetTerm::Coset(a)) => {
                CosetTerm::Coset(a + &b.to_ring(a.k()).expect("points are integral"))
            }
            (CosetTerm::Coset(a), CosetTerm::Coset(b)) => {
                let j = a.k().min(b.k());
                CosetTerm::Coset(&a.reduce(j) + &b.reduce(j))
            }
        }
    }

    /// The smallest coset of level `<= j` containing this one.
    pub fn widen(&self, j: u32) -> Self {
        match self {
            CosetTerm::Coset(a) if a.k() <= j => self.clone(),
            CosetTerm::Coset(a) => CosetTerm::Coset(a.reduce(j)),
            CosetTerm::Point(a) => CosetTerm::Coset(a.to_ring(j).expect("points are integral")),
        }
    }

    /// `s A`, with `0 A = {0}`.
    pub fn scale(&self, s: &Exact) -> Result<Self> {
        if !s.is_integral() {
            return Err(Error::Invalid("scale factor must be p-integral".into()));
        }
        let Some(v) = s.valuation() else {
            return Ok(CosetTerm::Point(Exact::zero(self.field())));
        };
        Ok(match self {
            CosetTerm::Point(a) => CosetTerm::Point(a * s),
            CosetTerm::Coset(a) => {
                let j = a.k() + v as u32;
                CosetTerm::Coset((&Exact::from_ring(a) * s).to_ring(j)?)
            }
        })
    }

    /// `Ig(z^A)`: `t^j igr` for `A = p^j R`, `t^v(a)` otherwise, and `0`
    /// for the point `0`.
    pub fn ig(&self) -> RationalFunction {
        let q = self.field().q();
        match self {
            CosetTerm::Coset(a) if a.is_zero() => igr(q).shift(a.k() as usize),
            CosetTerm::Coset(a) => RationalFunction::monomial(BigRational::one(), a.val() as usize),
            CosetTerm::Point(a) => match a.valuation() {
                None => RationalFunction::zero(),
                Some(v) => RationalFunction::monomial(BigRational::one(), v as usize),
            },
        }
    }

    fn sort_key(&self) -> (u8, u32, u128, Vec<BigRational>) {
        match self {
            CosetTerm::Coset(a) => (0, a.k(), a.index(), vec![]),
            CosetTerm::Point(a) => (1, 0, 0, a.coeffs().to_vec()),
        }
    }
}

impl PartialOrd for CosetTerm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CosetTerm {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl fmt::Display for CosetTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CosetTerm::Coset(a) => write!(f, "z^{{{a} + p^{} R}}", a.k()),
            CosetTerm::Point(a) => write!(f, "z^{{{a}}}"),
        }
    }
}

impl fmt::Debug for CosetTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A finite rational combination of coset terms.
#[derive(Clone, PartialEq, Eq)]
pub struct CosetCombination {
    field: FieldDesc,
    terms: BTreeMap<CosetTerm, BigRational>,
}

impl CosetCombination {
    pub fn zero(field: &FieldDesc) -> Self {
        CosetCombination { field: field.clone(), terms: BTreeMap::new() }
    }

    pub fn term(t: CosetTerm, c: BigRational) -> Self {
        let mut out = Self::zero(t.field());
        out.push(t, c);
        out
    }

    /// `z^{p^j R}`.
    pub fn ideal(field: &FieldDesc, j: u32) -> Result<Self> {
        Ok(Self::term(CosetTerm::ideal(field, j)?, BigRational::one()))
    }

    /// `z^a` for a single point.
    pub fn point(a: Exact) -> Result<Self> {
        Ok(Self::term(CosetTerm::point(a)?, BigRational::one()))
    }

    pub fn field(&self) -> &FieldDesc {
        &self.field
    }

    pub fn push(&mut self, t: CosetTerm, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(t) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CosetTerm, &BigRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `F(1)`, the sum of the coefficients.
    pub fn mass(&self) -> BigRational {
        self.terms.values().sum()
    }

    pub fn scale_coeffs(&self, c: &BigRational) -> Self {
        let mut out = Self::zero(&self.field);
        for (t, v) in &self.terms {
            out.push(t.clone(), v * c);
        }
        out
    }

    /// Largest finite level present.
    pub fn max_level(&self) -> Option<u32> {
        self.terms.keys().filter_map(CosetTerm::level).max()
    }

    pub fn has_points(&self) -> bool {
        self.terms.keys().any(|t| t.level().is_none())
    }

    /// Rewrites every complete tiling of a coset by its `q` equally weighted
    /// subcosets as the coset itself, from the finest level down.
    pub fn coalesce(&self) -> Self {
        let q = self.field.q() as usize;
        let mut terms = self.terms.clone();
        let top = self.max_level().unwrap_or(0);
        for j in (1..=top).rev() {
            let mut groups: BTreeMap<RingElem, Vec<(CosetTerm, BigRational)>> = BTreeMap::new();
            for (t, c) in &terms {
                if let CosetTerm::Coset(a) = t {
                    if a.k() == j {
                        groups.entry(a.reduce(j - 1)).or_default().push((t.clone(), c.clone()));
                    }
                }
            }
            for (parent, members) in groups {
                if members.len() == q && members.iter().all(|(_, c)| *c == members[0].1) {
                    let c = members[0].1.clone();
                    for (t, _) in &members {
                        terms.remove(t);
                    }
                    let slot = terms.entry(CosetTerm::Coset(parent)).or_insert_with(BigRational::zero);
                    *slot += c * BigRational::from_integer(q.into());
                }
            }
            terms.retain(|_, v| !v.is_zero());
        }
        CosetCombination { field: self.field.clone(), terms }
    }

    /// Canonical form of the element: every coset is spread to the finest
    /// level present and the result coalesced, so equal elements of the
    /// group ring get equal term maps.
    pub fn normalize(&self) -> Self {
        let Some(top) = self.max_level() else {
            return self.clone();
        };
        let mut out = Self::zero(&self.field);
        for (t, c) in &self.terms {
            match t {
                CosetTerm::Coset(a) if a.k() < top => {
                    let n = self.field.q_pow(top - a.k()).expect("levels are small");
                    let share = c / BigRational::from_integer(n.into());
                    let lower = a.k();
                    for idx in 0..n {
                        let off = RingElem::from_index(&self.field, top - lower, idx).expect("in range");
                        let off = off.lift(top).expect("in range").mul_p_pow(lower);
                        let rep = &a.lift(top).expect("in range") + &off;
                        out.push(CosetTerm::Coset(rep), share.clone());
                    }
                }
                _ => out.push(t.clone(), c.clone()),
            }
        }
        out.coalesce()
    }

    /// Replaces each term by the level-`j` coset containing it.
    pub fn uniformize(&self, j: u32) -> Self {
        let mut out = Self::zero(&self.field);
        for (t, c) in &self.terms {
            out.push(t.widen(j), c.clone());
        }
        out
    }

    /// Whether every term is a coset of level `<= j`, so that uniformizing
    /// at `j` changes nothing.
    pub fn is_uniform(&self, j: u32) -> bool {
        self.terms.keys().all(|t| t.level().is_some_and(|l| l <= j))
    }

    /// `F(z^s)`.
    pub fn scale(&self, s: &Exact) -> Result<Self> {
        let mut out = Self::zero(&self.field);
        for (t, c) in &self.terms {
            out.push(t.scale(s)?, c.clone());
        }
        Ok(out)
    }

    /// `F(z^(p^e))`.
    pub fn scale_p(&self, e: u32) -> Result<Self> {
        self.scale(&Exact::one(&self.field).mul_p_pow(i64::from(e)))
    }

    /// Multiplies by `z^A`.
    pub fn shift_by(&self, a: &CosetTerm) -> Self {
        let mut out = Self::zero(&self.field);
        for (t, c) in &self.terms {
            out.push(t.add(a), c.clone());
        }
        out
    }

    /// The level-`k` modular generating function.
    pub fn project(&self, k: u32) -> Result<ModularGF> {
        let ring = ResidueRing::new(&self.field, k)?;
        let mut coeffs = vec![BigRational::zero(); ring.size() as usize];
        for (t, c) in &self.terms {
            match t {
                CosetTerm::Coset(a) if a.k() > k => coeffs[ring.from_elem(&a.reduce(k))? as usize] += c,
                CosetTerm::Coset(a) => {
                    let lower = ResidueRing::new(&self.field, a.k())?;
                    let base = ring.lift_from(&lower, a.index() as u64);
                    let step = ring.from_elem(&RingElem::one(&self.field, k)?.mul_p_pow(a.k()))?;
                    let count = self.field.q_pow(k - a.k()).expect("within ring size") as u64;
                    let share = c / BigRational::from_integer(count.into());
                    // the coset is base + p^j (R/p^k), enumerated through its digits
                    let sub = ResidueRing::new(&self.field, k - a.k())?;
                    for idx in 0..count {
                        let off = ring.mul(ring.lift_from(&sub, idx), step);
                        coeffs[ring.add(base, off) as usize] += &share;
                    }
                }
                CosetTerm::Point(a) => coeffs[ring.from_elem(&a.to_ring(k)?)? as usize] += c,
            }
        }
        ModularGF::from_coeffs(&self.field, k, coeffs)
    }

    /// `Ig(F)`, linear in `F`.
    pub fn ig(&self) -> RationalFunction {
        self.terms.iter().map(|(t, c)| t.ig().scale(c)).sum()
    }

    /// Canonical text: one `coeff * z^{...}` line per term, ordered by level
    /// then representative, points last.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (t, c) in &self.terms {
            out.push_str(&format!("{} * {t}\n", fmt_coeff(c)));
        }
        out
    }
}

impl fmt::Display for CosetCombination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(t, c)| format!("{} * {t}", fmt_coeff(c))).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for CosetCombination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CosetCombination({self})")
    }
}

impl Add for &CosetCombination {
    type Output = CosetCombination;
    fn add(self, rhs: &CosetCombination) -> CosetCombination {
        let mut out = self.clone();
        for (t, c) in &rhs.terms {
            out.push(t.clone(), c.clone());
        }
        out
    }
}

impl Neg for &CosetCombination {
    type Output = CosetCombination;
    fn neg(self) -> CosetCombination {
        self.scale_coeffs(&-BigRational::one())
    }
}

impl Sub for &CosetCombination {
    type Output = CosetCombination;
    fn sub(self, rhs: &CosetCombination) -> CosetCombination {
        self + &(-rhs)
    }
}

impl Mul for &CosetCombination {
    type Output = CosetCombination;
    /// Bilinear extension of `z^A z^B = z^(A+B)`.
    fn mul(self, rhs: &CosetCombination) -> CosetCombination {
        let mut acc: BTreeMap<CosetTerm, BigRational> = BTreeMap::new();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                *acc.entry(a.add(b)).or_insert_with(BigRational::zero) += x * y;
            }
        }
        acc.retain(|_, v| !v.is_zero());
        CosetCombination { field: self.field.clone(), terms: acc }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfunc::rat;

    fn f3() -> FieldDesc {
        FieldDesc::new(3, 1).unwrap()
    }

    fn coset(field: &FieldDesc, a: i64, j: u32) -> CosetTerm {
        CosetTerm::coset(&RingElem::from_int(field, j, a).unwrap(), j).unwrap()
    }

    #[test]
    fn products_and_coalescence() {
        let f = f3();
        let p = coset(&f, 1, 1).add(&coset(&f, 2, 2));
        assert_eq!(p, coset(&f, 0, 1));
        let mut g = CosetCombination::zero(&f);
        for w in 0..3 {
            g.push(coset(&f, w, 1), rat(1, 1));
        }
        assert_eq!(g.coalesce(), CosetCombination::term(coset(&f, 0, 0), rat(3, 1)));
        let mut h = CosetCombination::zero(&f);
        for w in [1, 4, 7] {
            h.push(coset(&f, w, 2), rat(1, 1));
        }
        assert_eq!(h.coalesce(), CosetCombination::term(coset(&f, 1, 1), rat(3, 1)));
    }

    #[test]
    fn scaling_and_ig() {
        let f = f3();
        let t = CosetCombination::term(coset(&f, 1, 1), rat(1, 1));
        let s = t.scale(&Exact::from_int(&f, 3)).unwrap();
        assert_eq!(s, CosetCombination::term(coset(&f, 3, 2), rat(1, 1)));
        let zero = t.scale(&Exact::zero(&f)).unwrap();
        assert_eq!(zero, CosetCombination::point(Exact::zero(&f)).unwrap());
        let i = CosetCombination::ideal(&f, 2).unwrap().ig();
        assert_eq!(i, igr(3).shift(2));
        let f5 = FieldDesc::new(5, 1).unwrap();
        assert_eq!(
            CosetCombination::point(Exact::from_int(&f5, 5)).unwrap().ig(),
            RationalFunction::monomial(rat(1, 1), 1)
        );
        let f2 = FieldDesc::new(2, 1).unwrap();
        assert_eq!(
            CosetTerm::coset(&RingElem::from_int(&f2, 2, 2).unwrap(), 2).unwrap().ig(),
            RationalFunction::monomial(rat(1, 1), 1)
        );
    }

    #[test]
    fn projection() {
        let f = f3();
        let t = CosetCombination::term(coset(&f, 1, 1), rat(1, 1));
        let m = t.project(2).unwrap();
        for a in 0..9u64 {
            let expect = if a % 3 == 1 { rat(1, 3) } else { rat(0, 1) };
            assert_eq!(m.coeffs()[a as usize], expect);
        }
    }
}
