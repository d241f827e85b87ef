use super::heads::{gf_truncated, head_unimodular};
use super::{CosetCombination, CosetTerm, ModularGF};
use crate::padic::Exact;
use crate::quadform::{JordanForm, UnimodularClass};
use crate::ratfunc::RationalFunction;
use crate::{Error, Result};

/// The generating function of a Jordan form, exact through `level`, split
/// into the product of the unrolled head recursions (`body`) and the part
/// carried by the tails (`remainder`).
#[derive(Clone, Debug)]
pub struct AssembledGf {
    pub level: u32,
    pub body: CosetCombination,
    pub remainder: CosetCombination,
}

impl AssembledGf {
    pub fn total(&self) -> CosetCombination {
        &self.body + &self.remainder
    }

    pub fn project(&self, k: u32) -> Result<ModularGF> {
        if k > self.level {
            return Err(Error::InsufficientPrecision(format!("assembled to level {}, asked for {k}", self.level)));
        }
        self.total().project(k)
    }
}

/// `G(z^(p^i))` for a block `Q` at exponent `i`, through `level`.
fn block_factor(q: &UnimodularClass, i: u32, level: u32) -> Result<(CosetCombination, CosetCombination)> {
    let field = q.field();
    if i >= level {
        return Ok((CosetCombination::zero(field), CosetCombination::ideal(field, level)?));
    }
    let (b, r) = gf_truncated(q, level - i)?;
    Ok((b.scale_p(i)?.uniformize(level), r.scale_p(i)?.uniformize(level)))
}

/// `z^c z^(p^lambda R) prod_i G_(Q_i)(z^(p^i))`, exact through `level`.
pub fn assemble_gf(j: &JordanForm, level: u32) -> Result<AssembledGf> {
    let field = j.field();
    let mut body = CosetCombination::point(Exact::zero(field))?;
    let mut full = body.clone();
    for (i, q) in j.blocks() {
        let (b, r) = block_factor(q, i, level)?;
        full = (&full * &(&b + &r)).uniformize(level);
        body = (&body * &b).uniformize(level);
    }
    if let Some(l) = j.lambda() {
        let lin = CosetCombination::ideal(field, l.min(level))?;
        full = (&full * &lin).uniformize(level);
        body = (&body * &lin).uniformize(level);
    }
    let c = CosetTerm::point(j.constant().clone())?;
    let body = body.shift_by(&c).coalesce();
    let full = full.shift_by(&c);
    let remainder = (&full - &body).coalesce();
    Ok(AssembledGf { level, body, remainder })
}

/// `Ig(z^A H_(P0)(z) prod_(j>=1) G_(Pj)(z^(p^j)))` where `A` is the point
/// `a`, or the coset `a + p^mu R` when `mu` is given. The product only
/// matters through level `2 v(2) + 1`, where the head is uniform.
pub fn i_term(a: &Exact, mu: Option<u32>, parts: &[UnimodularClass]) -> Result<RationalFunction> {
    let Some(p0) = parts.first() else {
        return Err(Error::Invalid("no head block".into()));
    };
    let level = 2 * p0.field().ell() + 1;
    let mut acc = head_unimodular(p0)?;
    if acc.is_empty() {
        return Ok(RationalFunction::zero());
    }
    for (j, pj) in parts.iter().enumerate().skip(1) {
        let j = j as u32;
        if j >= level || pj.is_zero() {
            continue;
        }
        let (b, r) = gf_truncated(pj, level - j)?;
        let factor = (&b + &r).scale_p(j)?.uniformize(level);
        acc = (&acc * &factor).uniformize(level);
    }
    let shift = match mu {
        Some(m) => CosetTerm::Coset(a.to_ring(m)?),
        None => CosetTerm::point(a.clone())?,
    };
    Ok(acc.shift_by(&shift).ig())
}
