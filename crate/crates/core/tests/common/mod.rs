#![allow(dead_code)]

use quadzeta::padic::{Exact, FieldDesc};
use quadzeta::quadform::{all_classes, JordanForm, UnimodularClass};

pub fn field(p: u64, f: usize) -> FieldDesc {
    FieldDesc::new(p, f).unwrap()
}

/// Every pure Jordan form with blocks at the given exponents and total rank
/// at most `max_rank`, the zero form included.
pub fn pure_forms(field: &FieldDesc, exponents: &[u32], max_rank: u32) -> Vec<JordanForm> {
    let classes = all_classes(field, max_rank).unwrap();
    let mut out = Vec::new();
    // (next exponent slot, rank so far, blocks chosen)
    type Partial = (usize, u32, Vec<(u32, UnimodularClass)>);
    let mut stack: Vec<Partial> = vec![(0, 0, vec![])];
    while let Some((pos, rank, blocks)) = stack.pop() {
        if pos == exponents.len() {
            out.push(JordanForm::new(field, blocks, None, Exact::zero(field)).unwrap());
            continue;
        }
        for c in &classes {
            if rank + c.rank() <= max_rank {
                let mut b = blocks.clone();
                if !c.is_zero() {
                    b.push((exponents[pos], c.clone()));
                }
                stack.push((pos + 1, rank + c.rank(), b));
            }
        }
    }
    out
}

pub fn p_power(field: &FieldDesc, e: u32, unit: i64) -> Exact {
    Exact::from_int(field, unit).mul_p_pow(i64::from(e))
}
