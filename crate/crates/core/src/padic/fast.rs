use super::{FieldDesc, RingElem, MAX_F};
use crate::{Error, Result};

/// `R/p^k` with elements encoded as their digit-order index.
///
/// This is the oracle's arithmetic unit: no allocation per operation, so the
/// enumeration loops stay cheap. The encoding agrees with
/// [`RingElem::index`].
#[derive(Clone, Debug)]
pub struct ResidueRing {
    field: FieldDesc,
    k: u32,
    f: usize,
    modk: u64,
    size: u64,
    modulus: [u64; MAX_F],
}

type Digits = [u64; MAX_F];

/// Largest ring the fast encoding accepts.
const MAX_SIZE: u128 = 1 << 40;

impl ResidueRing {
    pub fn new(field: &FieldDesc, k: u32) -> Result<Self> {
        let modk = field.p_pow(k)?;
        let size = field
            .q_pow(k)
            .filter(|&s| s <= MAX_SIZE)
            .ok_or_else(|| Error::SizeGuard(format!("R/p^{k} over {field}")))? as u64;
        let f = field.f();
        let mut modulus = [0; MAX_F];
        for (i, &c) in field.modulus()[..f].iter().enumerate() {
            modulus[i] = c.rem_euclid(modk as i64) as u64;
        }
        Ok(ResidueRing { field: field.clone(), k, f, modk, size, modulus })
    }

    pub fn field(&self) -> &FieldDesc {
        &self.field
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn size(&self) -> u64 {
        self.size
    }

    pub fn modk(&self) -> u64 {
        self.modk
    }

    pub fn decode(&self, mut x: u64) -> Digits {
        let mut d = [0; MAX_F];
        for slot in d.iter_mut().take(self.f) {
            *slot = x % self.modk;
            x /= self.modk;
        }
        d
    }

    pub fn encode(&self, d: &Digits) -> u64 {
        d[..self.f].iter().rev().fold(0, |acc, &c| acc * self.modk + c)
    }

    pub fn add(&self, x: u64, y: u64) -> u64 {
        let (a, b) = (self.decode(x), self.decode(y));
        let mut d = [0; MAX_F];
        for i in 0..self.f {
            d[i] = (a[i] + b[i]) % self.modk;
        }
        self.encode(&d)
    }

    pub fn neg(&self, x: u64) -> u64 {
        let a = self.decode(x);
        let mut d = [0; MAX_F];
        for i in 0..self.f {
            d[i] = (self.modk - a[i]) % self.modk;
        }
        self.encode(&d)
    }

    pub fn sub(&self, x: u64, y: u64) -> u64 {
        self.add(x, self.neg(y))
    }

    pub fn mul(&self, x: u64, y: u64) -> u64 {
        let (a, b) = (self.decode(x), self.decode(y));
        let m = self.modk as u128;
        let mut prod = [0u128; 2 * MAX_F];
        for i in 0..self.f {
            for j in 0..self.f {
                prod[i + j] = (prod[i + j] + a[i] as u128 * b[j] as u128) % m;
            }
        }
        // x^f = -(m_0 + ... + m_{f-1} x^{f-1})
        for deg in (self.f..2 * self.f - 1).rev() {
            let c = prod[deg];
            if c == 0 {
                continue;
            }
            prod[deg] = 0;
            for i in 0..self.f {
                let sub = c * self.modulus[i] as u128 % m;
                let slot = &mut prod[deg - self.f + i];
                *slot = (*slot + m - sub) % m;
            }
        }
        let mut d = [0; MAX_F];
        for i in 0..self.f {
            d[i] = prod[i] as u64;
        }
        self.encode(&d)
    }

    /// Multiplication by an integer.
    pub fn scalar(&self, x: u64, c: u64) -> u64 {
        let a = self.decode(x);
        let mut d = [0; MAX_F];
        for i in 0..self.f {
            d[i] = (a[i] as u128 * c as u128 % self.modk as u128) as u64;
        }
        self.encode(&d)
    }

    /// Valuation, reported as `k` for zero.
    pub fn val(&self, x: u64) -> u32 {
        let p = self.field.p();
        let a = self.decode(x);
        a[..self.f]
            .iter()
            .filter(|&&c| c != 0)
            .map(|&c| {
                let (mut c, mut v) = (c, 0);
                while c % p == 0 {
                    c /= p;
                    v += 1;
                }
                v
            })
            .min()
            .unwrap_or(self.k)
    }

    /// Reinterprets an index of `R/p^j` (`j <= k`) as an element here; the
    /// digits are unchanged, so this is the standard lift.
    pub fn lift_from(&self, lower: &ResidueRing, x: u64) -> u64 {
        self.encode(&lower.decode(x))
    }

    /// Index in `R/p^j` of the reduction of `x`.
    pub fn reduce_to(&self, lower: &ResidueRing, x: u64) -> u64 {
        let mut d = self.decode(x);
        for c in d.iter_mut().take(self.f) {
            *c %= lower.modk;
        }
        lower.encode(&d)
    }

    pub fn from_elem(&self, a: &RingElem) -> Result<u64> {
        if a.field() != &self.field {
            return Err(Error::Invalid("element over a different ring".into()));
        }
        let a = if a.k() >= self.k { a.reduce(self.k) } else { a.lift(self.k)? };
        Ok(a.index() as u64)
    }

    pub fn to_elem(&self, x: u64) -> RingElem {
        RingElem::from_index(&self.field, self.k, x as u128).expect("precision already validated")
    }
}

impl PartialEq for ResidueRing {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.k == other.k
    }
}

impl Eq for ResidueRing {}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn agrees_with_ring_elem() {
        for (p, f, k) in [(2, 2, 3), (3, 2, 2), (2, 3, 2), (5, 1, 3)] {
            let field = FieldDesc::new(p, f).unwrap();
            let ring = ResidueRing::new(&field, k).unwrap();
            let all = RingElem::all(&field, k).unwrap();
            for a in all.iter().step_by(3) {
                for b in all.iter().step_by(5) {
                    let (x, y) = (a.index() as u64, b.index() as u64);
                    assert_eq!(ring.add(x, y), (a + b).index() as u64);
                    assert_eq!(ring.mul(x, y), (a * b).index() as u64);
                    assert_eq!(ring.sub(x, y), (a - b).index() as u64);
                }
                assert_eq!(ring.val(a.index() as u64), a.val());
            }
        }
    }
}
