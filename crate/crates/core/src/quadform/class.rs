use std::collections::BTreeSet;
use std::fmt;

use num_rational::BigRational;

use crate::padic::{pick_nonsquare, pick_xi, trace_zero_set, Exact, FieldDesc, RingElem};
use crate::{Error, Result};

/// Precision at which square classes of units are determined: mod 8 for
/// `p = 2`, mod `p` otherwise.
pub fn class_precision(field: &FieldDesc) -> u32 {
    if field.p() == 2 {
        3
    } else {
        1
    }
}

/// The fixed nonsquare unit `alpha` (odd `p`) at class precision.
pub fn alpha(field: &FieldDesc) -> Result<RingElem> {
    pick_nonsquare(field, class_precision(field))
}

/// The fixed unit `xi` of odd trace (`p = 2`) at class precision.
pub fn xi(field: &FieldDesc) -> Result<RingElem> {
    pick_xi(field, class_precision(field))
}

fn at_class_precision(u: &RingElem) -> Result<RingElem> {
    let k = class_precision(u.field());
    if u.k() < k {
        return Err(Error::InsufficientPrecision(format!("square class needs precision {k}")));
    }
    Ok(u.reduce(k))
}

/// Canonical representative of the square class of a unit.
///
/// Odd `p`: `1` or `alpha`. For `p = 2` the Teichmüller factor is divided
/// out (Teichmüller units are squares) and among the `u(1 + 4s)`, `s`
/// ranging over trace-zero Teichmüller digits, the one of least index is
/// taken; these are exactly the class members mod 8.
pub fn canonical_unit(u: &RingElem) -> Result<RingElem> {
    if !u.is_unit() {
        return Err(Error::NotUnit);
    }
    let u = at_class_precision(u)?;
    let field = u.field().clone();
    if field.p() != 2 {
        return if u.is_square_unit()? { RingElem::one(&field, 1) } else { alpha(&field) };
    }
    let v = &u * &u.teichmuller().inv()?;
    let one = RingElem::one(&field, 3)?;
    let best = trace_zero_set(&field, 3)?.iter().map(|s| &v * &(&one + &s.scalar(4))).min().expect("S contains 0");
    Ok(best)
}

/// The norm ideal of a unimodular form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Norm {
    Zero,
    TwoR,
    R,
}

impl fmt::Display for Norm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Norm::Zero => "0",
            Norm::TwoR => "2R",
            Norm::R => "R",
        })
    }
}

/// A unimodular quadratic form up to equivalence, in one of the shapes
/// `a Sq (+ b Sq) (+ Ell) + Hyp^k`.
///
/// For odd `p` the shape is the canonical one determined by rank and
/// discriminant: one square for odd rank, planes only for even rank. For
/// `p = 2` there are at most two squares and at most one elliptic plane,
/// and square coefficients are stored as canonical class representatives.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UnimodularClass {
    field: FieldDesc,
    hyp_count: u32,
    has_ell: bool,
    square_coeffs: Vec<RingElem>,
}

impl UnimodularClass {
    pub fn zero(field: &FieldDesc) -> Self {
        UnimodularClass { field: field.clone(), hyp_count: 0, has_ell: false, square_coeffs: vec![] }
    }

    pub fn hyp(field: &FieldDesc) -> Self {
        UnimodularClass { hyp_count: 1, ..Self::zero(field) }
    }

    pub fn hyp_power(field: &FieldDesc, k: u32) -> Self {
        UnimodularClass { hyp_count: k, ..Self::zero(field) }
    }

    pub fn ell(field: &FieldDesc) -> Self {
        UnimodularClass { has_ell: true, ..Self::zero(field) }
    }

    /// `u Sq`, the rank one form `u x^2`.
    pub fn sq(u: &RingElem) -> Result<Self> {
        Self::from_parts(u.field(), 0, 0, std::slice::from_ref(u))
    }

    /// `u Sq` for an integer `u`.
    pub fn sq_int(field: &FieldDesc, u: i64) -> Result<Self> {
        Self::sq(&RingElem::from_int(field, class_precision(field), u)?)
    }

    /// Any direct sum of hyperbolic planes, elliptic planes and unit
    /// squares, brought to canonical shape.
    pub fn from_parts(field: &FieldDesc, hyp: u32, ell: u32, squares: &[RingElem]) -> Result<Self> {
        let mut sq = Vec::with_capacity(squares.len());
        for u in squares {
            if u.field() != field {
                return Err(Error::Invalid("square coefficient over another ring".into()));
            }
            sq.push(canonical_unit(u)?);
        }
        if field.p() == 2 {
            fold_dyadic(field, hyp, ell, sq)
        } else {
            fold_odd(field, hyp, ell, &sq)
        }
    }

    pub fn field(&self) -> &FieldDesc {
        &self.field
    }

    pub fn hyp_count(&self) -> u32 {
        self.hyp_count
    }

    pub fn has_ell(&self) -> bool {
        self.has_ell
    }

    pub fn square_coeffs(&self) -> &[RingElem] {
        &self.square_coeffs
    }

    pub fn rank(&self) -> u32 {
        2 * self.hyp_count + 2 * u32::from(self.has_ell) + self.square_coeffs.len() as u32
    }

    pub fn is_zero(&self) -> bool {
        self.rank() == 0
    }

    pub fn norm(&self) -> Norm {
        if !self.square_coeffs.is_empty() {
            Norm::R
        } else if self.rank() > 0 {
            if self.field.p() == 2 {
                Norm::TwoR
            } else {
                Norm::R
            }
        } else {
            Norm::Zero
        }
    }

    /// `+` for `Planes(+)` (hyperbolic planes only), `-` when an elliptic
    /// plane is present.
    pub fn plane_sign(&self) -> i8 {
        if self.has_ell {
            -1
        } else {
            1
        }
    }

    /// Canonical representative of the discriminant's square class.
    pub fn disc(&self) -> Result<RingElem> {
        let k = class_precision(&self.field);
        let minus_one = RingElem::from_int(&self.field, k, -1)?;
        let mut d = RingElem::one(&self.field, k)?;
        for _ in 0..self.hyp_count {
            d = &d * &minus_one;
        }
        if self.has_ell {
            d = &d * &ell_disc(&self.field)?;
        }
        for u in &self.square_coeffs {
            d = &d * u;
        }
        canonical_unit(&d)
    }

    /// `(rank, discriminant class, norm)`.
    pub fn invariants(&self) -> Result<(u32, RingElem, Norm)> {
        Ok((self.rank(), self.disc()?, self.norm()))
    }

    /// Direct sum, folded back into a canonical shape.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::Invalid("forms over different rings".into()));
        }
        let mut sq = self.square_coeffs.clone();
        sq.extend(other.square_coeffs.iter().cloned());
        let ell = u32::from(self.has_ell) + u32::from(other.has_ell);
        Self::from_parts(&self.field, self.hyp_count + other.hyp_count, ell, &sq)
    }

    /// Equivalence of the forms the two shapes denote.
    ///
    /// Shapes for odd `p` and odd-rank shapes for `p = 2` are unique. Two
    /// even-rank dyadic forms of norm `R` are compared after adding `Sq` to
    /// both, which is faithful because unimodular lattices of equal norm on
    /// isometric spaces are isometric over an unramified dyadic ring.
    pub fn equivalent(&self, other: &Self) -> Result<bool> {
        if self.rank() != other.rank() || self.norm() != other.norm() || self.field != other.field {
            return Ok(false);
        }
        if self.field.p() != 2 || self.rank() % 2 == 1 || self.norm() != Norm::R {
            return Ok(self == other);
        }
        let one = Self::sq_int(&self.field, 1)?;
        Ok(self.add(&one)? == other.add(&one)?)
    }

    /// The block-diagonal matrix of the displayed shape, squares first.
    pub fn matrix(&self) -> Result<Vec<Vec<Exact>>> {
        let f = &self.field;
        let mut blocks: Vec<Vec<Vec<Exact>>> = Vec::new();
        for u in &self.square_coeffs {
            blocks.push(vec![vec![Exact::from_ring(u)]]);
        }
        if self.has_ell {
            blocks.push(ell_matrix(f)?);
        }
        for _ in 0..self.hyp_count {
            blocks.push(vec![vec![Exact::zero(f), Exact::one(f)], vec![Exact::one(f), Exact::zero(f)]]);
        }
        Ok(block_diag(f, &blocks))
    }
}

/// Canonical representatives of the unit square classes.
pub fn unit_classes(field: &FieldDesc) -> Result<Vec<RingElem>> {
    let k = class_precision(field);
    let mut out = BTreeSet::new();
    for u in RingElem::all(field, k)?.iter().filter(|u| u.is_unit()) {
        out.insert(canonical_unit(u)?);
    }
    Ok(out.into_iter().collect())
}

/// Every canonical shape of rank `<= max_rank`, the zero form included.
pub fn all_classes(field: &FieldDesc, max_rank: u32) -> Result<Vec<UnimodularClass>> {
    let units = unit_classes(field)?;
    let max_sq = if field.p() == 2 { 2 } else { 1 };
    let mut square_lists: Vec<Vec<RingElem>> = vec![vec![]];
    for a in &units {
        square_lists.push(vec![a.clone()]);
        if max_sq == 2 {
            for b in units.iter().filter(|b| *b >= a) {
                square_lists.push(vec![a.clone(), b.clone()]);
            }
        }
    }
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for sq in &square_lists {
        for ell in 0..=1u32 {
            let base = sq.len() as u32 + 2 * ell;
            if base > max_rank {
                continue;
            }
            for hyp in 0..=(max_rank - base) / 2 {
                let c = UnimodularClass::from_parts(field, hyp, ell, sq)?;
                if seen.insert(c.to_string()) {
                    out.push(c);
                }
            }
        }
    }
    out.sort_by_key(|c| (c.rank(), c.to_string()));
    Ok(out)
}

/// The elliptic plane: `diag(1, -alpha)` for odd `p`, `2(x^2 + xy - xi y^2)`
/// for `p = 2`.
pub fn ell_matrix(field: &FieldDesc) -> Result<Vec<Vec<Exact>>> {
    let z = Exact::zero(field);
    if field.p() == 2 {
        let xi = Exact::from_ring(&xi(field)?);
        Ok(vec![
            vec![Exact::from_int(field, 2), Exact::one(field)],
            vec![Exact::one(field), xi.scale(&BigRational::from_integer((-2).into()))],
        ])
    } else {
        let a = Exact::from_ring(&alpha(field)?);
        Ok(vec![vec![Exact::one(field), z.clone()], vec![z, -&a]])
    }
}

fn ell_disc(field: &FieldDesc) -> Result<RingElem> {
    let k = class_precision(field);
    if field.p() == 2 {
        let x = xi(field)?;
        Ok(-(&RingElem::one(field, k)? + &x.scalar(4)))
    } else {
        Ok(-alpha(field)?)
    }
}

pub(crate) fn block_diag(field: &FieldDesc, blocks: &[Vec<Vec<Exact>>]) -> Vec<Vec<Exact>> {
    let n: usize = blocks.iter().map(Vec::len).sum();
    let mut m = vec![vec![Exact::zero(field); n]; n];
    let mut off = 0;
    for b in blocks {
        for (i, row) in b.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                m[off + i][off + j] = e.clone();
            }
        }
        off += b.len();
    }
    m
}

fn fold_odd(field: &FieldDesc, hyp: u32, ell: u32, squares: &[RingElem]) -> Result<UnimodularClass> {
    let r = 2 * hyp + 2 * ell + squares.len() as u32;
    let minus_one = RingElem::from_int(field, 1, -1)?;
    let mut d = RingElem::one(field, 1)?;
    for _ in 0..hyp {
        d = &d * &minus_one;
    }
    for _ in 0..ell {
        d = &d * &ell_disc(field)?;
    }
    for u in squares {
        d = &d * u;
    }
    // d * (-1)^floor(r/2) decides the shape in both parities
    let mut e = d;
    for _ in 0..r / 2 {
        e = &e * &minus_one;
    }
    let square = e.is_square_unit()?;
    let zero = UnimodularClass::zero(field);
    Ok(if r.is_multiple_of(2) {
        if square {
            UnimodularClass { hyp_count: r / 2, ..zero }
        } else {
            UnimodularClass { hyp_count: r / 2 - 1, has_ell: true, ..zero }
        }
    } else {
        let a = if square { RingElem::one(field, 1)? } else { alpha(field)? };
        UnimodularClass { hyp_count: r / 2, square_coeffs: vec![a], ..zero }
    })
}

fn fold_dyadic(field: &FieldDesc, mut hyp: u32, mut ell: u32, mut squares: Vec<RingElem>) -> Result<UnimodularClass> {
    squares.sort();
    while squares.len() >= 3 {
        let rest = squares.split_off(3);
        let (d, is_hyp) = three_squares(&squares[0], &squares[1], &squares[2])?;
        squares = rest;
        squares.push(d);
        squares.sort();
        if is_hyp {
            hyp += 1;
        } else {
            ell += 1;
        }
    }
    hyp += 2 * (ell / 2);
    ell %= 2;
    Ok(UnimodularClass { field: field.clone(), hyp_count: hyp, has_ell: ell == 1, square_coeffs: squares })
}

/// `a Sq + b Sq + c Sq = d Sq + P` with `P` a hyperbolic (`true`) or
/// elliptic (`false`) plane: hyperbolic exactly when `a r^2 + b s^2 + c t^2`
/// represents `-abc` mod 8. Squares mod 8 depend only on residues mod 4.
pub fn three_squares(a: &RingElem, b: &RingElem, c: &RingElem) -> Result<(RingElem, bool)> {
    let field = a.field().clone();
    if field.p() != 2 {
        return Err(Error::Unsupported("three-square rule is for p = 2".into()));
    }
    let (a, b, c) = (at_class_precision(a)?, at_class_precision(b)?, at_class_precision(c)?);
    let sq: BTreeSet<RingElem> = RingElem::all(&field, 2)?
        .iter()
        .map(|r| {
            let r = r.lift(3).expect("precision 3 is supported");
            &r * &r
        })
        .collect();
    let times = |u: &RingElem| -> BTreeSet<RingElem> { sq.iter().map(|s| u * s).collect() };
    let (sa, sb, sc) = (times(&a), times(&b), times(&c));
    let ab: BTreeSet<RingElem> = sa.iter().flat_map(|x| sb.iter().map(move |y| x + y)).collect();
    let target = -(&(&a * &b) * &c);
    let hyp = sc.iter().any(|z| ab.contains(&(&target - z)));
    let d = if hyp {
        target
    } else {
        let one = RingElem::one(&field, 3)?;
        &target * &(&one + &xi(&field)?.scalar(4))
    };
    Ok((canonical_unit(&d)?, hyp))
}

/// Direct sum of two classes.
pub fn add_forms(a: &UnimodularClass, b: &UnimodularClass) -> Result<UnimodularClass> {
    a.add(b)
}

impl fmt::Display for UnimodularClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.square_coeffs.iter().map(|u| format!("Sq({u})")).collect();
        if self.has_ell {
            parts.push("Ell".into());
        }
        match self.hyp_count {
            0 => {}
            1 => parts.push("Hyp".into()),
            k => parts.push(format!("Hyp^{k}")),
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl fmt::Debug for UnimodularClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UnimodularClass({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2() -> FieldDesc {
        FieldDesc::new(2, 1).unwrap()
    }

    fn sq(field: &FieldDesc, u: i64) -> UnimodularClass {
        UnimodularClass::sq_int(field, u).unwrap()
    }

    #[test]
    fn three_square_examples() {
        let f = z2();
        let s = |a: i64, b: i64, c: i64| sq(&f, a).add(&sq(&f, b)).unwrap().add(&sq(&f, c)).unwrap();
        assert_eq!(s(1, 3, 5).to_string(), "Sq(1) + Hyp");
        assert_eq!(s(5, 5, 5).to_string(), "Sq(7) + Ell");
        assert_eq!(s(1, 1, 1).to_string(), "Sq(3) + Ell");
        let e = UnimodularClass::ell(&f);
        assert_eq!(e.add(&e).unwrap(), UnimodularClass::hyp_power(&f, 2));
    }

    #[test]
    fn odd_shapes() {
        let f = FieldDesc::new(5, 1).unwrap();
        let a = sq(&f, 2).add(&sq(&f, 3)).unwrap();
        assert_eq!(a.to_string(), "Hyp");
        let b = sq(&f, 1).add(&sq(&f, 1)).unwrap();
        assert_eq!(b.to_string(), "Hyp");
        let f3 = FieldDesc::new(3, 1).unwrap();
        let c = sq(&f3, 1).add(&sq(&f3, 1)).unwrap();
        assert_eq!(c.to_string(), "Ell");
        assert_eq!(c.disc().unwrap().index(), 1);
        let d = c.add(&sq(&f3, 1)).unwrap();
        assert_eq!(d.rank(), 3);
        assert_eq!(d.disc().unwrap().index(), 1);
    }

    #[test]
    fn invariants_examples() {
        let f = FieldDesc::new(5, 1).unwrap();
        let (r, d, n) = UnimodularClass::hyp(&f).invariants().unwrap();
        // -1 is a square mod 5
        assert_eq!((r, d.index(), n), (2, 1, Norm::R));
        let (r, d, n) = UnimodularClass::zero(&f).invariants().unwrap();
        assert_eq!((r, d.index(), n), (0, 1, Norm::Zero));
    }

    #[test]
    fn square_class_count() {
        for fdeg in 1..=2 {
            let f = FieldDesc::new(2, fdeg).unwrap();
            let reps: BTreeSet<RingElem> = RingElem::all(&f, 3)
                .unwrap()
                .iter()
                .filter(|u| u.is_unit())
                .map(|u| canonical_unit(u).unwrap())
                .collect();
            assert_eq!(reps.len() as u64, 2 * f.q());
        }
    }
}
