//! Value distributions of blocks whose law is unchanged by multiplying the
//! value by a unit square (homogeneous forms, and `b x`), stored as masses
//! on the orbits of that action. Convolving two such laws only needs the
//! orbit structure constants, not the full `q^k` by `q^k` product.

use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::histogram::CompiledPoly;
use crate::exec::Exec;
use crate::padic::{FieldDesc, ResidueRing};
use crate::quadform::QuadPoly;
use crate::Result;

pub(crate) struct OrbitSpace {
    pub ring: ResidueRing,
    pub orbit_of: Vec<u32>,
    pub members: Vec<Vec<u64>>,
    /// `consts[a][b][c]`: how many `y` in orbit `b` put `rep(a) + y` in
    /// orbit `c`.
    consts: OnceLock<Vec<Vec<Vec<u64>>>>,
}

impl OrbitSpace {
    fn build(field: &FieldDesc, k: u32) -> Result<Self> {
        let ring = ResidueRing::new(field, k)?;
        let size = ring.size();
        let squares: BTreeSet<u64> =
            (0..size).filter(|&u| ring.val(u) == 0 || k == 0).map(|u| ring.mul(u, u)).collect();
        let mut orbit_of = vec![u32::MAX; size as usize];
        let mut members: Vec<Vec<u64>> = Vec::new();
        for x in 0..size {
            if orbit_of[x as usize] != u32::MAX {
                continue;
            }
            let id = members.len() as u32;
            let orbit: BTreeSet<u64> = squares.iter().map(|&s| ring.mul(s, x)).collect();
            for &y in &orbit {
                orbit_of[y as usize] = id;
            }
            members.push(orbit.into_iter().collect());
        }
        Ok(OrbitSpace { ring, orbit_of, members, consts: OnceLock::new() })
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn rep(&self, a: usize) -> u64 {
        self.members[a][0]
    }

    fn consts(&self, exec: Exec) -> &Vec<Vec<Vec<u64>>> {
        self.consts.get_or_init(|| {
            let n = self.len();
            exec.map(n, |a| {
                let x = self.rep(a);
                (0..n)
                    .map(|b| {
                        let mut row = vec![0u64; n];
                        for &y in &self.members[b] {
                            row[self.orbit_of[self.ring.add(x, y) as usize] as usize] += 1;
                        }
                        row
                    })
                    .collect()
            })
        })
    }

    pub fn point_mass(&self, x: u64) -> Vec<BigRational> {
        let mut d = vec![BigRational::zero(); self.len()];
        d[self.orbit_of[x as usize] as usize] = BigRational::one();
        d
    }

    /// Law of the sum of independent invariant values.
    pub fn convolve(&self, d1: &[BigRational], d2: &[BigRational], exec: Exec) -> Vec<BigRational> {
        let consts = self.consts(exec);
        let n = self.len();
        let mut out = vec![BigRational::zero(); n];
        for a in (0..n).filter(|&a| !d1[a].is_zero()) {
            for b in (0..n).filter(|&b| !d2[b].is_zero()) {
                let w = &d1[a] * &d2[b] / BigRational::from_integer(BigInt::from(self.members[b].len()));
                for (c, &m) in consts[a][b].iter().enumerate().filter(|(_, m)| **m != 0) {
                    out[c] += &w * BigRational::from_integer(BigInt::from(m));
                }
            }
        }
        out
    }

    /// Probability that an invariant value equals `x`.
    pub fn density(&self, d: &[BigRational], x: u64) -> BigRational {
        let o = self.orbit_of[x as usize] as usize;
        &d[o] / BigRational::from_integer(BigInt::from(self.members[o].len()))
    }
}

type Cache = Mutex<HashMap<(FieldDesc, u32), Arc<OrbitSpace>>>;

pub(crate) fn orbit_space(field: &FieldDesc, k: u32) -> Result<Arc<OrbitSpace>> {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let key = (field.clone(), k);
    if let Some(s) = cache.lock().expect("cache lock").get(&key) {
        return Ok(s.clone());
    }
    let s = Arc::new(OrbitSpace::build(field, k)?);
    cache.lock().expect("cache lock").insert(key, s.clone());
    Ok(s)
}

fn frac(n: u64, d: u64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Histogram over orbits of the values `g(x)`, `x` ranging over the listed
/// points with equal weight `w`.
fn tally(
    space: &OrbitSpace,
    cp: &CompiledPoly,
    points: impl Iterator<Item = Vec<u64>>,
    w: &BigRational,
) -> Vec<BigRational> {
    let mut counts = vec![0u64; space.len()];
    for x in points {
        counts[space.orbit_of[cp.eval(&x) as usize] as usize] += 1;
    }
    counts.into_iter().map(|c| w * BigRational::from_integer(BigInt::from(c))).collect()
}

/// Orbit law of an invariant block of one or two variables at level `k`.
/// One variable is enumerated. For a binary form the primitive vectors are
/// reached through `x1 (1, t)` and `x2 (p w, 1)`, the scalar square being
/// absorbed by the orbit, and the rest is `p^2` times the level `k - 2` law.
pub(crate) fn block_law(g: &QuadPoly, k: u32) -> Result<Vec<BigRational>> {
    type LawCache = Mutex<HashMap<(String, u32), Vec<BigRational>>>;
    static LAWS: OnceLock<LawCache> = OnceLock::new();
    let laws = LAWS.get_or_init(|| Mutex::new(HashMap::new()));
    let key = (format!("{g:?}"), k);
    if let Some(l) = laws.lock().expect("cache lock").get(&key) {
        return Ok(l.clone());
    }
    let law = compute_law(g, k)?;
    laws.lock().expect("cache lock").insert(key, law.clone());
    Ok(law)
}

fn compute_law(g: &QuadPoly, k: u32) -> Result<Vec<BigRational>> {
    let field = g.field();
    let space = orbit_space(field, k)?;
    let size = space.ring.size();
    let cp = CompiledPoly::new(g, k)?;
    if g.n() == 1 {
        return Ok(tally(&space, &cp, (0..size).map(|x| vec![x]), &frac(1, size)));
    }
    assert_eq!(g.n(), 2, "invariant blocks have at most two variables");
    let q = field.q();
    let ring = &space.ring;
    let one = if k == 0 { 0 } else { 1 };
    let unit_part =
        tally(&space, &cp, (0..size).map(|t| vec![one, t]), &(frac(q - 1, q) / BigRational::from_integer(size.into())));
    let pw: Vec<u64> = (0..size).filter(|&s| k == 0 || ring.val(s) >= 1).collect();
    let w2 = frac(q - 1, q * q) / BigRational::from_integer(BigInt::from(pw.len()));
    let second = tally(&space, &cp, pw.iter().map(|&s| vec![s, one]), &w2);
    let mut out: Vec<BigRational> = unit_part.iter().zip(&second).map(|(a, b)| a + b).collect();
    let tail = frac(1, q * q);
    if k <= 2 {
        out[space.orbit_of[0] as usize] += tail;
    } else {
        let lower = orbit_space(field, k - 2)?;
        let inner = block_law(g, k - 2)?;
        let p2 = field.p() * field.p();
        for (o, m) in inner.iter().enumerate().filter(|(_, m)| !m.is_zero()) {
            let v = ring.scalar(ring.lift_from(&lower.ring, lower.rep(o)), p2);
            out[space.orbit_of[v as usize] as usize] += m * &tail;
        }
    }
    Ok(out)
}
