use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;

use super::class::{block_diag, UnimodularClass};
use super::jordan::{group_pieces, jordan_split, Piece};
use super::QuadPoly;
use crate::padic::{Exact, FieldDesc};
use crate::{Error, Result};

/// `sum_i p^i Q_i + p^lambda x + c` with classified unimodular `Q_i`.
#[derive(Clone, PartialEq, Eq)]
pub struct JordanForm {
    field: FieldDesc,
    blocks: BTreeMap<u32, UnimodularClass>,
    lambda: Option<u32>,
    c: Exact,
}

impl JordanForm {
    /// Blocks sharing an exponent are added together; zero blocks dropped.
    pub fn new(field: &FieldDesc, blocks: Vec<(u32, UnimodularClass)>, lambda: Option<u32>, c: Exact) -> Result<Self> {
        if !c.is_integral() || c.field() != field {
            return Err(Error::Invalid("constant must be p-integral over the same ring".into()));
        }
        let mut map: BTreeMap<u32, UnimodularClass> = BTreeMap::new();
        for (i, q) in blocks {
            if q.field() != field {
                return Err(Error::Invalid("block over another ring".into()));
            }
            let slot = map.entry(i).or_insert_with(|| UnimodularClass::zero(field));
            *slot = slot.add(&q)?;
        }
        map.retain(|_, q| !q.is_zero());
        Ok(JordanForm { field: field.clone(), blocks: map, lambda, c })
    }

    /// A pure form with a single block.
    pub fn single(q: UnimodularClass, exponent: u32) -> Self {
        let field = q.field().clone();
        Self::new(&field, vec![(exponent, q)], None, Exact::zero(&field)).expect("valid block")
    }

    pub fn field(&self) -> &FieldDesc {
        &self.field
    }

    pub fn blocks(&self) -> impl Iterator<Item = (u32, &UnimodularClass)> {
        self.blocks.iter().map(|(&i, q)| (i, q))
    }

    pub fn lambda(&self) -> Option<u32> {
        self.lambda
    }

    pub fn constant(&self) -> &Exact {
        &self.c
    }

    /// `v(c)`, `None` when `c = 0`.
    pub fn kappa(&self) -> Option<u32> {
        self.c.valuation().map(|v| v as u32)
    }

    pub fn with_lambda(&self, lambda: Option<u32>) -> Self {
        JordanForm { lambda, ..self.clone() }
    }

    pub fn with_constant(&self, c: Exact) -> Result<Self> {
        Self::new(&self.field, self.blocks.clone().into_iter().collect(), self.lambda, c)
    }

    /// `Q_i`, zero when absent.
    pub fn block(&self, i: u32) -> UnimodularClass {
        self.blocks.get(&i).cloned().unwrap_or_else(|| UnimodularClass::zero(&self.field))
    }

    /// Largest exponent carrying a nonzero block.
    pub fn omega(&self) -> Option<u32> {
        self.blocks.keys().next_back().copied()
    }

    pub fn rank(&self) -> u32 {
        self.blocks.values().map(UnimodularClass::rank).sum()
    }

    /// Number of variables of the standard polynomial.
    pub fn n_vars(&self) -> usize {
        self.rank() as usize + usize::from(self.lambda.is_some())
    }

    pub fn is_standard(&self) -> bool {
        match (self.lambda, self.omega()) {
            (Some(l), Some(w)) => l > w,
            _ => true,
        }
    }

    /// The form with every block at exponent `>= lambda` dropped; this does
    /// not change the value distribution.
    pub fn standardized(&self) -> Self {
        let mut out = self.clone();
        if let Some(l) = self.lambda {
            out.blocks.retain(|&i, _| i < l);
        }
        out
    }

    /// `Q_(j)`: the sum of the `Q_i` with `i <= j`, `i = j mod 2`.
    pub fn fold(&self, j: u32) -> Result<UnimodularClass> {
        let mut acc = UnimodularClass::zero(&self.field);
        for (&i, q) in &self.blocks {
            if i <= j && (j - i).is_multiple_of(2) {
                acc = acc.add(q)?;
            }
        }
        Ok(acc)
    }

    /// `r_(j) = rank Q_(j)`.
    pub fn r_fold(&self, j: u32) -> u32 {
        self.blocks.iter().filter(|(&i, _)| i <= j && (j - i).is_multiple_of(2)).map(|(_, q)| q.rank()).sum()
    }

    /// The exponent of `q_(j) = q^(sum_{i<j} r_(i))`.
    pub fn q_exp(&self, j: u32) -> u32 {
        (0..j).map(|i| self.r_fold(i)).sum()
    }

    /// The standard polynomial: block-diagonal canonical matrices, then the
    /// linear variable `p^lambda x`, then the constant.
    pub fn to_quadpoly(&self) -> Result<QuadPoly> {
        let f = &self.field;
        let mut blocks = Vec::new();
        for (&i, q) in &self.blocks {
            let m = q.matrix()?;
            blocks.push(m.iter().map(|row| row.iter().map(|e| e.mul_p_pow(i64::from(i))).collect()).collect());
        }
        if self.lambda.is_some() {
            blocks.push(vec![vec![Exact::zero(f)]]);
        }
        let m = block_diag(f, &blocks);
        let mut b = vec![Exact::zero(f); m.len()];
        if let Some(l) = self.lambda {
            *b.last_mut().expect("linear variable present") = Exact::one(f).mul_p_pow(i64::from(l));
        }
        QuadPoly::new(f, m, b, self.c.clone())
    }
}

impl fmt::Display for JordanForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.blocks.iter().map(|(i, q)| format!("({q}) @ pi^{i}")).collect();
        if let Some(l) = self.lambda {
            parts.push(format!("pi^{l} x"));
        }
        if !self.c.is_zero() {
            parts.push(self.c.to_string());
        }
        if parts.is_empty() {
            return write!(f, "0");
        }
        let mut out = parts[0].clone();
        for p in &parts[1..] {
            match p.strip_prefix('-') {
                Some(rest) => out.push_str(&format!(" - {rest}")),
                None => out.push_str(&format!(" + {p}")),
            }
        }
        write!(f, "{out}")
    }
}

impl fmt::Debug for JordanForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "JordanForm[{}]({self})", self.field)
    }
}

/// Result of [`reduce_standard`]: the form plus one audit line per step.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub form: JordanForm,
    pub audit: Vec<String>,
}

/// `h = (1/2) beta P^-1` for a piece matrix `P`.
fn half_shift(p: &[Vec<Exact>], beta: &[Exact]) -> Result<Vec<Exact>> {
    let half = BigRational::new(1.into(), 2.into());
    match p.len() {
        1 => Ok(vec![(&beta[0] * &p[0][0].inv()?).scale(&half)]),
        _ => {
            let det = &(&p[0][0] * &p[1][1]) - &(&p[0][1] * &p[1][0]);
            let di = det.inv()?.scale(&half);
            // P^-1 = adj(P)/det, symmetric
            let h0 = &(&(&beta[0] * &p[1][1]) - &(&beta[1] * &p[1][0])) * &di;
            let h1 = &(&(&beta[1] * &p[0][0]) - &(&beta[0] * &p[0][1])) * &di;
            Ok(vec![h0, h1])
        }
    }
}

fn quad_value(p: &[Vec<Exact>], h: &[Exact]) -> Exact {
    let mut acc = Exact::zero(h[0].field());
    for i in 0..h.len() {
        for j in 0..h.len() {
            acc = &acc + &(&(&h[i] * &p[i][j]) * &h[j]);
        }
    }
    acc
}

/// Brings a quadratic polynomial to the standard shape
/// `sum p^i Q_i + p^lambda x + c` (with `lambda` above every block
/// exponent) without changing its value distribution mod any `p^k`.
///
/// After a Jordan splitting, each rank one or two constituent absorbs its
/// share of the linear part by completing the square when the shift is
/// integral; otherwise the constituent is replaced by a single linear term
/// of the least valuation present (for `a x^2 + b x` over `Z_2` with
/// `v(a) = v(b)` this term is `2 b x`). Linear terms then merge into one and
/// blocks at exponents `>= lambda` drop out.
pub fn reduce_standard(q: &QuadPoly) -> Result<Reduction> {
    let field = q.field().clone();
    if !q.has_integral_matrix() {
        return Err(Error::Unsupported("quadratic part has odd cross coefficients; scale it first".into()));
    }
    let s = jordan_split(&field, q.matrix())?;
    if let Some(k) = q.precision() {
        let need = s.det_valuation() + if field.p() == 2 { 3 } else { 1 };
        if k < need {
            return Err(Error::InsufficientPrecision(format!("precision {k} below {need}")));
        }
    }
    let moved = q.transform(&s.basis)?;
    let beta = moved.linear();
    let mut audit = vec![format!("Jordan splitting into {} constituent(s)", s.pieces.len())];
    let mut c = q.constant().clone();
    let mut linear_vals: Vec<(u32, String)> = Vec::new();
    let mut kept: Vec<Piece> = Vec::new();

    for &v in &s.null_vars {
        if let Some(val) = beta[v].valuation() {
            linear_vals.push((val as u32, format!("y{v}: linear only, valuation {val}")));
        } else {
            audit.push(format!("y{v}: does not occur, dropped"));
        }
    }
    for piece in &s.pieces {
        let block: Vec<Vec<Exact>> =
            piece.unit.iter().map(|row| row.iter().map(|e| e.mul_p_pow(i64::from(piece.exponent))).collect()).collect();
        let b: Vec<Exact> = piece.vars.iter().map(|&v| beta[v].clone()).collect();
        let names = piece.vars.iter().map(|v| format!("y{v}")).collect::<Vec<_>>().join(",");
        if b.iter().all(Exact::is_zero) {
            audit.push(format!("{names}: purely quadratic at exponent {}", piece.exponent));
            kept.push(piece.clone());
            continue;
        }
        let h = half_shift(&block, &b)?;
        if h.iter().all(Exact::is_integral) {
            c = &c - &quad_value(&block, &h);
            audit.push(format!("{names}: shift by an integral vector absorbs the linear part"));
            kept.push(piece.clone());
            continue;
        }
        let vb = b.iter().filter_map(Exact::valuation).min().expect("nonzero linear part") as u32;
        if field.p() == 2 && piece.vars.len() == 1 && vb == piece.exponent {
            if field.f() != 1 {
                return Err(Error::Unsupported(
                    "a x^2 + b x with v(a) = v(b) over a proper unramified extension of Z_2".into(),
                ));
            }
            linear_vals.push((vb + 1, format!("{names}: a x^2 + b x with v(a) = v(b), becomes 2 b x")));
        } else {
            linear_vals.push((vb, format!("{names}: linear term dominates, becomes a linear form of valuation {vb}")));
        }
    }
    let lambda = linear_vals.iter().map(|(v, _)| *v).min();
    audit.extend(linear_vals.into_iter().map(|(_, s)| s));
    if let Some(l) = lambda {
        audit.push(format!("linear terms merge into p^{l} x"));
        let dropped = kept.iter().filter(|p| p.exponent >= l).count();
        if dropped > 0 {
            audit.push(format!("{dropped} constituent(s) at exponent >= {l} absorbed by the linear term"));
        }
        kept.retain(|p| p.exponent < l);
    }
    let blocks = group_pieces(&field, &kept)?;
    let form = JordanForm::new(&field, blocks, lambda, c)?;
    Ok(Reduction { form, audit })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_examples() {
        let z2 = FieldDesc::new(2, 1).unwrap();
        let r = reduce_standard(&QuadPoly::from_ints(&z2, &[vec![1]], &[1], 0).unwrap()).unwrap();
        assert_eq!(r.form.to_string(), "pi^1 x");
        let z5 = FieldDesc::new(5, 1).unwrap();
        let r = reduce_standard(&QuadPoly::from_ints(&z5, &[vec![1]], &[2], 0).unwrap()).unwrap();
        assert_eq!(r.form.to_string(), "(Sq(1)) @ pi^0 - 1");
        let z3 = FieldDesc::new(3, 1).unwrap();
        let half = Exact::from_int(&z3, 2).inv().unwrap();
        let z = Exact::zero(&z3);
        let xy = vec![vec![z.clone(), half.clone()], vec![half, z.clone()]];
        let q = QuadPoly::new(&z3, xy, vec![Exact::one(&z3), z.clone()], z).unwrap();
        let r = reduce_standard(&q).unwrap();
        assert_eq!(r.form.to_string(), "(Hyp) @ pi^0");
        assert!(r.form.is_standard());
    }

    #[test]
    fn folding() {
        let f = FieldDesc::new(3, 1).unwrap();
        let s = UnimodularClass::sq_int(&f, 1).unwrap();
        let j = JordanForm::new(&f, vec![(0, s.clone()), (2, s.clone()), (1, s)], None, Exact::zero(&f)).unwrap();
        assert_eq!(j.r_fold(2), 2);
        assert_eq!(j.r_fold(3), 1);
        assert_eq!(j.q_exp(3), 1 + 1 + 2);
        assert_eq!(j.fold(2).unwrap().to_string(), "Ell");
    }
}
