use std::fmt;

use num_rational::BigRational;

use crate::padic::{Exact, FieldDesc, RingElem};
use crate::{Error, Result};

/// `Q(x) = x M x^T + b.x + c` with exact `p`-integral coefficients.
///
/// `M` itself may have half-integral off-diagonal entries (so that `xy` is
/// expressible over `Z_2`); the polynomial's coefficients `M_ii`, `2 M_ij`,
/// `b_i` and `c` must be integral. Jordan splitting additionally requires
/// `M` to be integral.
#[derive(Clone, PartialEq, Eq)]
pub struct QuadPoly {
    field: FieldDesc,
    m: Vec<Vec<Exact>>,
    b: Vec<Exact>,
    c: Exact,
    precision: Option<u32>,
}

impl QuadPoly {
    pub fn new(field: &FieldDesc, m: Vec<Vec<Exact>>, b: Vec<Exact>, c: Exact) -> Result<Self> {
        let n = m.len();
        if m.iter().any(|row| row.len() != n) {
            return Err(Error::Invalid("matrix is not square".into()));
        }
        let b = if b.is_empty() { vec![Exact::zero(field); n] } else { b };
        if b.len() != n {
            return Err(Error::Invalid(format!("linear part has {} entries for {n} variables", b.len())));
        }
        let two = BigRational::from_integer(2.into());
        for i in 0..n {
            for j in 0..n {
                if m[i][j] != m[j][i] {
                    return Err(Error::Invalid("matrix is not symmetric".into()));
                }
                let coeff = if i == j { m[i][j].clone() } else { m[i][j].scale(&two) };
                if !coeff.is_integral() {
                    return Err(Error::Invalid(format!("coefficient {coeff} is not p-integral")));
                }
            }
        }
        if b.iter().chain([&c]).any(|e| !e.is_integral()) {
            return Err(Error::Invalid("linear or constant part is not p-integral".into()));
        }
        let all = m.iter().flatten().chain(&b).chain([&c]);
        if all.into_iter().any(|e| e.field() != field) {
            return Err(Error::Invalid("coefficients over another ring".into()));
        }
        Ok(QuadPoly { field: field.clone(), m, b, c, precision: None })
    }

    pub fn from_ints(field: &FieldDesc, m: &[Vec<i64>], b: &[i64], c: i64) -> Result<Self> {
        let m = m.iter().map(|row| row.iter().map(|&e| Exact::from_int(field, e)).collect()).collect();
        let b = b.iter().map(|&e| Exact::from_int(field, e)).collect();
        Self::new(field, m, b, Exact::from_int(field, c))
    }

    /// A form with no linear or constant part.
    pub fn form(field: &FieldDesc, m: Vec<Vec<Exact>>) -> Result<Self> {
        Self::new(field, m, vec![], Exact::zero(field))
    }

    /// Declares that the coefficients are only known modulo `p^k`.
    pub fn with_precision(mut self, k: u32) -> Self {
        self.precision = Some(k);
        self
    }

    pub fn field(&self) -> &FieldDesc {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.m.len()
    }

    pub fn matrix(&self) -> &[Vec<Exact>] {
        &self.m
    }

    pub fn linear(&self) -> &[Exact] {
        &self.b
    }

    pub fn constant(&self) -> &Exact {
        &self.c
    }

    pub fn precision(&self) -> Option<u32> {
        self.precision
    }

    pub fn is_homogeneous(&self) -> bool {
        self.c.is_zero() && self.b.iter().all(Exact::is_zero)
    }

    pub fn has_integral_matrix(&self) -> bool {
        self.m.iter().flatten().all(Exact::is_integral)
    }

    /// Polynomial coefficients: `M_ii` for the squares and `2 M_ij` for the
    /// cross terms `x_i x_j`, `i < j`, omitting zeros.
    pub fn monomials(&self) -> (Vec<Exact>, Vec<(usize, usize, Exact)>) {
        let two = BigRational::from_integer(2.into());
        let diag = (0..self.n()).map(|i| self.m[i][i].clone()).collect();
        let mut cross = Vec::new();
        for i in 0..self.n() {
            for j in i + 1..self.n() {
                if !self.m[i][j].is_zero() {
                    cross.push((i, j, self.m[i][j].scale(&two)));
                }
            }
        }
        (diag, cross)
    }

    /// Value at a point of `(R/p^k)^n`.
    pub fn eval(&self, x: &[RingElem]) -> Result<RingElem> {
        if x.len() != self.n() {
            return Err(Error::Invalid("point has the wrong dimension".into()));
        }
        let k = x.first().map_or(1, RingElem::k);
        let (diag, cross) = self.monomials();
        let mut acc = self.c.to_ring(k)?;
        for (i, d) in diag.iter().enumerate() {
            acc = acc.checked_add(&d.to_ring(k)?.checked_mul(&x[i])?.checked_mul(&x[i])?)?;
            acc = acc.checked_add(&self.b[i].to_ring(k)?.checked_mul(&x[i])?)?;
        }
        for (i, j, e) in &cross {
            acc = acc.checked_add(&e.to_ring(k)?.checked_mul(&x[*i])?.checked_mul(&x[*j])?)?;
        }
        Ok(acc)
    }

    /// `Q(x) + Q'(y)` in disjoint variables.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::Invalid("polynomials over different rings".into()));
        }
        let (n1, n2) = (self.n(), other.n());
        let mut m = vec![vec![Exact::zero(&self.field); n1 + n2]; n1 + n2];
        for i in 0..n1 {
            for j in 0..n1 {
                m[i][j] = self.m[i][j].clone();
            }
        }
        for i in 0..n2 {
            for j in 0..n2 {
                m[n1 + i][n1 + j] = other.m[i][j].clone();
            }
        }
        let b = self.b.iter().chain(&other.b).cloned().collect();
        let mut out = Self::new(&self.field, m, b, &self.c + &other.c)?;
        out.precision = match (self.precision, other.precision) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        Ok(out)
    }

    /// The polynomial restricted to the listed variables, constant dropped.
    pub fn restrict(&self, vars: &[usize]) -> Self {
        let m = vars.iter().map(|&i| vars.iter().map(|&j| self.m[i][j].clone()).collect()).collect();
        let b = vars.iter().map(|&i| self.b[i].clone()).collect();
        QuadPoly { field: self.field.clone(), m, b, c: Exact::zero(&self.field), precision: self.precision }
    }

    /// Connected blocks of variables (linked by cross terms), each with its
    /// slice of the linear part; variables that do not occur are omitted.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut i = 0;
            while i < comp.len() {
                let v = comp[i];
                for w in 0..n {
                    if !seen[w] && !self.m[v][w].is_zero() {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
                i += 1;
            }
            comp.sort_unstable();
            let occurs = comp.iter().any(|&v| !self.b[v].is_zero() || comp.iter().any(|&w| !self.m[v][w].is_zero()));
            if occurs {
                out.push(comp);
            }
        }
        out
    }

    /// Substitution `x = y B^T`, i.e. the variables are the columns of `B`:
    /// `M' = B^T M B`, `b' = B^T b`.
    pub fn transform(&self, basis: &[Vec<Exact>]) -> Result<Self> {
        let n = self.n();
        let z = Exact::zero(&self.field);
        let mut mb = vec![vec![z.clone(); n]; n];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    mb[i][j] = &mb[i][j] + &(&self.m[i][k] * &basis[k][j]);
                }
            }
        }
        let mut m = vec![vec![z.clone(); n]; n];
        let mut b = vec![z; n];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    m[i][j] = &m[i][j] + &(&basis[k][i] * &mb[k][j]);
                }
            }
            for k in 0..n {
                b[i] = &b[i] + &(&basis[k][i] * &self.b[k]);
            }
        }
        let mut out = Self::new(&self.field, m, b, self.c.clone())?;
        out.precision = self.precision;
        Ok(out)
    }
}

impl fmt::Display for QuadPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (diag, cross) = self.monomials();
        let mut terms = Vec::new();
        let coef = |e: &Exact| {
            let s = e.to_string();
            if s.contains(' ') || s.contains('/') {
                format!("({s})")
            } else {
                s
            }
        };
        for (i, d) in diag.iter().enumerate() {
            if !d.is_zero() {
                terms.push(format!("{}*x{i}^2", coef(d)));
            }
        }
        for (i, j, e) in &cross {
            terms.push(format!("{}*x{i}*x{j}", coef(e)));
        }
        for (i, e) in self.b.iter().enumerate() {
            if !e.is_zero() {
                terms.push(format!("{}*x{i}", coef(e)));
            }
        }
        if !self.c.is_zero() || terms.is_empty() {
            terms.push(coef(&self.c));
        }
        write!(f, "{}", terms.join(" + "))
    }
}

impl fmt::Debug for QuadPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuadPoly[{}]({self})", self.field)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_and_eval() {
        let f = FieldDesc::new(3, 1).unwrap();
        let q = QuadPoly::from_ints(&f, &[vec![1, 0], vec![0, 3]], &[0, 1], 2).unwrap();
        let x = [RingElem::from_int(&f, 2, 2).unwrap(), RingElem::from_int(&f, 2, 1).unwrap()];
        // 4 + 3 + 1 + 2 = 10 = 1 mod 9
        assert_eq!(q.eval(&x).unwrap(), RingElem::from_int(&f, 2, 1).unwrap());
        assert_eq!(q.components(), vec![vec![0], vec![1]]);
        assert!(QuadPoly::from_ints(&f, &[vec![1, 2], vec![0, 1]], &[], 0).is_err());
    }

    #[test]
    fn half_integral_cross_term() {
        let f = FieldDesc::new(2, 1).unwrap();
        let half = Exact::from_int(&f, 2).inv().unwrap();
        let z = Exact::zero(&f);
        let q = QuadPoly::form(&f, vec![vec![z.clone(), half.clone()], vec![half, z]]).unwrap();
        assert!(!q.has_integral_matrix());
        assert_eq!(q.to_string(), "1*x0*x1");
    }
}
