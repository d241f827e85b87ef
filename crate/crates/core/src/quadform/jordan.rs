use std::collections::BTreeMap;

use num_rational::BigRational;

use super::class::{canonical_unit, UnimodularClass};
use super::QuadPoly;
use crate::padic::{Exact, FieldDesc};
use crate::{Error, Result};

/// One constituent `p^exponent * unit` of a Jordan splitting, of size 1 or 2,
/// on the listed variables of the new basis.
#[derive(Clone, Debug)]
pub struct Piece {
    pub exponent: u32,
    pub vars: Vec<usize>,
    pub unit: Vec<Vec<Exact>>,
}

/// `B^T M B` is block diagonal with the pieces as blocks and zeros on
/// `null_vars`; the columns of `basis` are the new variables.
#[derive(Clone, Debug)]
pub struct Splitting {
    pub pieces: Vec<Piece>,
    pub null_vars: Vec<usize>,
    pub basis: Vec<Vec<Exact>>,
    pub transformed: Vec<Vec<Exact>>,
}

impl Splitting {
    /// `sum exponent * size`, the valuation of the determinant of the
    /// nondegenerate part.
    pub fn det_valuation(&self) -> u32 {
        self.pieces.iter().map(|p| p.exponent * p.vars.len() as u32).sum()
    }
}

fn val(e: &Exact) -> Option<i64> {
    e.valuation()
}

/// `col_k -= f col_i` on the basis and the congruent transform on `a`.
fn clear(a: &mut [Vec<Exact>], basis: &mut [Vec<Exact>], i: usize, k: usize, f: &Exact) {
    if f.is_zero() {
        return;
    }
    let n = a.len();
    for row in basis.iter_mut() {
        row[k] = &row[k] - &(f * &row[i]);
    }
    for r in 0..n {
        a[r][k] = &a[r][k] - &(f * &a[r][i]);
    }
    for c in 0..n {
        a[k][c] = &a[k][c] - &(f * &a[i][c]);
    }
}

/// `col_i += col_j`.
fn add_col(a: &mut [Vec<Exact>], basis: &mut [Vec<Exact>], i: usize, j: usize) {
    let minus_one = Exact::from_int(a[0][0].field(), -1);
    clear(a, basis, j, i, &minus_one);
}

/// Symmetric elimination with valuation pivoting.
///
/// A diagonal entry of least valuation is split off as a rank-one piece when
/// no off-diagonal entry is strictly smaller. Otherwise, for odd `p`, a
/// least off-diagonal entry is moved onto the diagonal by `x_i += x_j`; for
/// `p = 2` the corresponding 2x2 block (with even diagonal after scaling) is
/// split off. The change of basis is unimodular.
pub fn jordan_split(field: &FieldDesc, m: &[Vec<Exact>]) -> Result<Splitting> {
    let n = m.len();
    if m.iter().flatten().any(|e| !e.is_integral()) {
        return Err(Error::Invalid("Jordan splitting needs an integral matrix".into()));
    }
    let mut a: Vec<Vec<Exact>> = m.to_vec();
    let mut basis: Vec<Vec<Exact>> =
        (0..n).map(|i| (0..n).map(|j| Exact::from_int(field, i64::from(i == j))).collect()).collect();
    let mut active: Vec<usize> = (0..n).collect();
    let mut pieces = Vec::new();
    while !active.is_empty() {
        let mut best_diag: Option<(i64, usize)> = None;
        let mut best_off: Option<(i64, usize, usize)> = None;
        for (x, &i) in active.iter().enumerate() {
            if let Some(v) = val(&a[i][i]) {
                if best_diag.is_none_or(|(bv, _)| v < bv) {
                    best_diag = Some((v, i));
                }
            }
            for &j in &active[x + 1..] {
                if let Some(v) = val(&a[i][j]) {
                    if best_off.is_none_or(|(bv, _, _)| v < bv) {
                        best_off = Some((v, i, j));
                    }
                }
            }
        }
        let one_by_one = match (best_diag, best_off) {
            (None, None) => break,
            (Some((dv, i)), off) if off.is_none_or(|(ov, _, _)| dv <= ov) => Some(i),
            _ => None,
        };
        if let Some(i) = one_by_one {
            let pivot_inv = a[i][i].inv()?;
            for &k in &active {
                if k != i {
                    let f = &a[k][i] * &pivot_inv;
                    clear(&mut a, &mut basis, i, k, &f);
                }
            }
            let e = val(&a[i][i]).expect("nonzero pivot");
            pieces.push(Piece { exponent: e as u32, vars: vec![i], unit: vec![vec![a[i][i].mul_p_pow(-e)]] });
            active.retain(|&x| x != i);
            continue;
        }
        let (v, i, j) = best_off.expect("some entry is nonzero");
        if field.p() != 2 {
            add_col(&mut a, &mut basis, i, j);
            debug_assert_eq!(val(&a[i][i]), Some(v));
            continue;
        }
        // 2x2 pivot: solve P [f_i f_j]^T = [a_ik a_jk]^T for each other k
        let det = &(&a[i][i] * &a[j][j]) - &(&a[i][j] * &a[i][j]);
        let det_inv = det.inv()?;
        for &k in &active {
            if k == i || k == j {
                continue;
            }
            let fi = &(&(&a[j][j] * &a[i][k]) - &(&a[i][j] * &a[j][k])) * &det_inv;
            let fj = &(&(&a[i][i] * &a[j][k]) - &(&a[i][j] * &a[i][k])) * &det_inv;
            clear(&mut a, &mut basis, i, k, &fi);
            clear(&mut a, &mut basis, j, k, &fj);
        }
        let unit = vec![
            vec![a[i][i].mul_p_pow(-v), a[i][j].mul_p_pow(-v)],
            vec![a[j][i].mul_p_pow(-v), a[j][j].mul_p_pow(-v)],
        ];
        pieces.push(Piece { exponent: v as u32, vars: vec![i, j], unit });
        active.retain(|&x| x != i && x != j);
    }
    let null_vars = active;
    for (r, row) in a.iter().enumerate() {
        for (c, e) in row.iter().enumerate() {
            let same = pieces.iter().any(|p| p.vars.contains(&r) && p.vars.contains(&c));
            if !same && !e.is_zero() {
                return Err(Error::Inconsistent("elimination left an off-block entry".into()));
            }
        }
    }
    Ok(Splitting { pieces, null_vars, basis, transformed: a })
}

/// Class of one piece: `u Sq` for size 1; for size 2 (only `p = 2`) the
/// plane `[[2a, b], [b, 2c]]` is hyperbolic iff `Tr(ac/b^2)` is even.
pub fn classify_piece(field: &FieldDesc, unit: &[Vec<Exact>]) -> Result<UnimodularClass> {
    match unit.len() {
        1 => UnimodularClass::sq(&canonical_unit(&unit[0][0].to_ring(3)?)?),
        2 => {
            let half = BigRational::new(1.into(), 2.into());
            let (a, b, c) = (unit[0][0].scale(&half), &unit[0][1], unit[1][1].scale(&half));
            if !a.is_integral() || !c.is_integral() || !b.is_unit() {
                return Err(Error::Invalid("not an even unimodular plane".into()));
            }
            let x = (&(&a * &c) * &(b * b).inv()?).to_ring(1)?;
            Ok(if x.trace_mod2() == 0 { UnimodularClass::hyp(field) } else { UnimodularClass::ell(field) })
        }
        _ => Err(Error::Invalid("pieces have size 1 or 2".into())),
    }
}

fn check_precision(field: &FieldDesc, precision: Option<u32>, s: &Splitting) -> Result<()> {
    if let Some(k) = precision {
        let need = s.det_valuation() + if field.p() == 2 { 3 } else { 1 };
        if k < need {
            return Err(Error::InsufficientPrecision(format!(
                "precision {k} cannot determine the Jordan constituents (needs {need})"
            )));
        }
    }
    Ok(())
}

/// Classified Jordan constituents `(i, Q_i)` of the quadratic part.
pub fn jordan_decompose(q: &QuadPoly) -> Result<Vec<(u32, UnimodularClass)>> {
    let s = jordan_split(q.field(), q.matrix())?;
    check_precision(q.field(), q.precision(), &s)?;
    group_pieces(q.field(), &s.pieces)
}

pub(crate) fn group_pieces(field: &FieldDesc, pieces: &[Piece]) -> Result<Vec<(u32, UnimodularClass)>> {
    let mut by_exp: BTreeMap<u32, UnimodularClass> = BTreeMap::new();
    for p in pieces {
        let c = classify_piece(field, &p.unit)?;
        let slot = by_exp.entry(p.exponent).or_insert_with(|| UnimodularClass::zero(field));
        *slot = slot.add(&c)?;
    }
    Ok(by_exp.into_iter().collect())
}

/// Class of a unimodular symmetric matrix.
pub fn classify_unimodular(field: &FieldDesc, m: &[Vec<Exact>]) -> Result<UnimodularClass> {
    let s = jordan_split(field, m)?;
    if !s.null_vars.is_empty() || s.pieces.iter().any(|p| p.exponent != 0) {
        return Err(Error::Invalid("matrix is not unimodular".into()));
    }
    let blocks = group_pieces(field, &s.pieces)?;
    Ok(blocks.into_iter().next().map_or_else(|| UnimodularClass::zero(field), |(_, c)| c))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(field: &FieldDesc, m: &[Vec<i64>]) -> Vec<Vec<Exact>> {
        m.iter().map(|r| r.iter().map(|&e| Exact::from_int(field, e)).collect()).collect()
    }

    #[test]
    fn decompose_examples() {
        let f3 = FieldDesc::new(3, 1).unwrap();
        let q = QuadPoly::from_ints(&f3, &[vec![1, 0], vec![0, 3]], &[], 0).unwrap();
        let d = jordan_decompose(&q).unwrap();
        assert_eq!(d.len(), 2);
        assert_eq!((d[0].0, d[0].1.to_string(), d[1].0, d[1].1.to_string()), (0, "Sq(1)".into(), 1, "Sq(1)".into()));
        let f2 = FieldDesc::new(2, 1).unwrap();
        let hyp = classify_unimodular(&f2, &ints(&f2, &[vec![0, 1], vec![1, 0]])).unwrap();
        assert_eq!(hyp.to_string(), "Hyp");
        let ell = classify_unimodular(&f2, &ints(&f2, &[vec![2, 1], vec![1, 2]])).unwrap();
        assert_eq!(ell.to_string(), "Ell");
        let c = classify_unimodular(&f2, &ints(&f2, &[vec![1, 0, 0], vec![0, 3, 0], vec![0, 0, 5]])).unwrap();
        assert_eq!(c.to_string(), "Sq(1) + Hyp");
    }

    #[test]
    fn basis_reproduces_blocks() {
        let f = FieldDesc::new(2, 1).unwrap();
        let m = ints(&f, &[vec![2, 1, 4], vec![1, 6, 2], vec![4, 2, 12]]);
        let s = jordan_split(&f, &m).unwrap();
        let q = QuadPoly::form(&f, m).unwrap().transform(&s.basis).unwrap();
        assert_eq!(q.matrix(), &s.transformed[..]);
        assert!(s.basis.iter().flatten().all(Exact::is_integral));
    }

    #[test]
    fn precision_guard() {
        let f = FieldDesc::new(2, 1).unwrap();
        let q = QuadPoly::from_ints(&f, &[vec![8]], &[], 0).unwrap().with_precision(5);
        assert!(matches!(jordan_decompose(&q), Err(Error::InsufficientPrecision(_))));
        assert!(jordan_decompose(&q.clone().with_precision(6)).is_ok());
    }
}
