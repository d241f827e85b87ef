use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::{Error, Result};

/// Largest supported residue degree.
pub const MAX_F: usize = 4;

/// The unramified ground ring `R = Z_p[x]/(m(x))`, uniformizer `p`.
///
/// Cheap to clone; equality compares `p` and the modulus.
#[derive(Clone)]
pub struct FieldDesc(Arc<Inner>);

struct Inner {
    p: u64,
    f: usize,
    q: u64,
    /// Monic, low degree first, length `f + 1`.
    modulus: Vec<i64>,
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Remainder of `a` modulo monic `b` over `F_p`, coefficients low first.
fn rem_mod_p(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db {
        let lead = r.pop().unwrap();
        if lead != 0 {
            let off = r.len() - db;
            for (j, &bc) in b.iter().take(db).enumerate() {
                r[off + j] = (r[off + j] + p - lead * bc % p) % p;
            }
        }
    }
    while r.last() == Some(&0) {
        r.pop();
    }
    r
}

fn irreducible_mod_p(m: &[u64], p: u64) -> bool {
    let f = m.len() - 1;
    for d in 1..=f / 2 {
        let count = p.pow(d as u32);
        for idx in 0..count {
            let mut g: Vec<u64> = (0..d).map(|j| idx / p.pow(j as u32) % p).collect();
            g.push(1);
            if rem_mod_p(m, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

impl FieldDesc {
    /// The ring with the default modulus: `x` for `f = 1`, otherwise the
    /// first monic irreducible mod `p` when coefficient vectors are read as
    /// base-`p` numbers, low digit first (`x^2+x+1` for `q = 4`).
    pub fn new(p: u64, f: usize) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if f == 0 || f > MAX_F {
            return Err(Error::InvalidField(format!("residue degree {f} outside 1..={MAX_F}")));
        }
        if f == 1 {
            return Self::with_modulus(p, vec![0, 1]);
        }
        for idx in 0..p.pow(f as u32) {
            let mut m: Vec<u64> = (0..f).map(|j| idx / p.pow(j as u32) % p).collect();
            m.push(1);
            if irreducible_mod_p(&m, p) {
                return Self::with_modulus(p, m.into_iter().map(|c| c as i64).collect());
            }
        }
        unreachable!("irreducible polynomials exist in every degree")
    }

    /// Explicit modulus, low degree first; must be monic and irreducible mod `p`.
    pub fn with_modulus(p: u64, modulus: Vec<i64>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if p > 1 << 20 {
            return Err(Error::InvalidField(format!("prime {p} too large")));
        }
        let f = modulus.len().saturating_sub(1);
        if f == 0 || f > MAX_F {
            return Err(Error::InvalidField(format!("residue degree {f} outside 1..={MAX_F}")));
        }
        if modulus[f] != 1 {
            return Err(Error::InvalidField("modulus must be monic".into()));
        }
        let red: Vec<u64> = modulus.iter().map(|&c| c.rem_euclid(p as i64) as u64).collect();
        if f > 1 && !irreducible_mod_p(&red, p) {
            return Err(Error::InvalidField("modulus is reducible mod p".into()));
        }
        let q = p.checked_pow(f as u32).ok_or_else(|| Error::InvalidField("q overflows".into()))?;
        Ok(FieldDesc(Arc::new(Inner { p, f, q, modulus })))
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }

    pub fn f(&self) -> usize {
        self.0.f
    }

    pub fn q(&self) -> u64 {
        self.0.q
    }

    /// `v(2)`: 1 for `p = 2`, else 0.
    pub fn ell(&self) -> u32 {
        u32::from(self.0.p == 2)
    }

    pub fn modulus(&self) -> &[i64] {
        &self.0.modulus
    }

    /// `p^k`, if it fits comfortably in 62 bits.
    pub fn p_pow(&self, k: u32) -> Result<u64> {
        let v = (self.0.p as u128).checked_pow(k).filter(|&v| v < 1u128 << 62);
        v.map(|v| v as u64).ok_or_else(|| Error::InsufficientPrecision(format!("p^{k} exceeds the supported range")))
    }

    /// `q^k` as a count of residues.
    pub fn q_pow(&self, k: u32) -> Option<u128> {
        (self.0.q as u128).checked_pow(k)
    }
}

impl PartialEq for FieldDesc {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.p == other.0.p && self.0.modulus == other.0.modulus)
    }
}

impl Eq for FieldDesc {}

impl Hash for FieldDesc {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.p.hash(state);
        self.0.modulus.hash(state);
    }
}

impl fmt::Debug for FieldDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GR(p={}, f={}, modulus={:?})", self.0.p, self.0.f, self.0.modulus)
    }
}

impl fmt::Display for FieldDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.f == 1 {
            write!(f, "Z_{}", self.0.p)
        } else {
            write!(f, "unramified degree-{} extension of Z_{}", self.0.f, self.0.p)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_moduli() {
        assert_eq!(FieldDesc::new(2, 2).unwrap().modulus(), &[1, 1, 1]);
        assert_eq!(FieldDesc::new(2, 3).unwrap().modulus(), &[1, 1, 0, 1]);
        assert_eq!(FieldDesc::new(3, 2).unwrap().modulus(), &[1, 0, 1]);
        assert_eq!(FieldDesc::new(5, 1).unwrap().q(), 5);
        assert_eq!(FieldDesc::new(2, 1).unwrap().ell(), 1);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(FieldDesc::new(4, 1).is_err());
        assert!(FieldDesc::with_modulus(2, vec![1, 0, 1]).is_err());
        assert!(FieldDesc::with_modulus(3, vec![1, 0, 2]).is_err());
    }
}
