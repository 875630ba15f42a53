//! Recursive bounds on the number of trees `t_d` and their edge counts
//! `m_d` by depth.

use num_bigint::BigUint;

use crate::structure::Signature;

/// Exact values are kept while `t_{d-1}` has at most this many bits.
const MAX_EXACT_BITS: u64 = 1 << 16;

/// `t_d = 2^t_log2`, and `m_d`, for one depth `d`.
///
/// Fields are `None` once the value is too large to write down.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeBound {
    pub d: usize,
    pub t_log2: Option<BigUint>,
    pub m: Option<BigUint>,
}

impl TreeBound {
    /// `t_d` itself, when it fits under the exact-size limit.
    pub fn t(&self) -> Option<BigUint> {
        let e = self.t_log2.as_ref()?;
        let bits: u64 = e.try_into().ok().filter(|&b| b <= MAX_EXACT_BITS)?;
        Some(BigUint::from(1u8) << bits)
    }
}

/// Computes the bounds with `s = |I|` and `r` the largest arity:
/// `t_0 = 1`, `m_0 = 0`, `t_d = 2^(s r t_{d-1}^(r-1))`,
/// `m_d = s r t_{d-1}^(r-1) (1 + (r-1) t_{d-1} m_{d-1})`.
pub fn tree_bounds(sig: &Signature, d: usize) -> TreeBound {
    let s = BigUint::from(sig.len());
    let r = sig.max_arity();
    let sr = s * BigUint::from(r);
    let mut cur = TreeBound { d: 0, t_log2: Some(BigUint::from(0u8)), m: Some(BigUint::from(0u8)) };
    for k in 1..=d {
        let t_prev = cur.t();
        // s r t_{d-1}^(r-1)
        let base = t_prev.as_ref().map(|t| &sr * t.pow(r as u32 - 1));
        let m = match (&base, &t_prev, &cur.m) {
            (Some(b), Some(t), Some(m)) => Some(b * (BigUint::from(1u8) + BigUint::from(r - 1) * t * m)),
            _ => None,
        };
        cur = TreeBound { d: k, t_log2: base, m };
    }
    cur
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn small_values() {
        let sig = Signature::digraph();
        let b0 = tree_bounds(&sig, 0);
        assert_eq!(b0.t(), Some(BigUint::from(1u8)));
        assert_eq!(b0.m, Some(BigUint::from(0u8)));
        let b1 = tree_bounds(&sig, 1);
        assert_eq!(b1.t(), Some(BigUint::from(4u8)));
        assert_eq!(b1.m, Some(BigUint::from(2u8)));
        let b2 = tree_bounds(&sig, 2);
        assert_eq!(b2.t(), Some(BigUint::from(256u32)));
        assert_eq!(b2.m, Some(BigUint::from(72u32)));
    }

    #[test]
    fn depth_three() {
        let b3 = tree_bounds(&Signature::digraph(), 3);
        assert_eq!(b3.t_log2, Some(BigUint::from(512u32)));
        assert_eq!(b3.m, Some(BigUint::from(9_437_696u32)));
    }

    #[test]
    fn two_relations() {
        let b1 = tree_bounds(&Signature::new(vec![2, 3]).unwrap(), 1);
        assert_eq!(b1.t(), Some(BigUint::from(64u8)));
        assert_eq!(b1.m, Some(BigUint::from(6u8)));
    }

    #[test]
    fn huge_depths_degrade() {
        let b = tree_bounds(&Signature::digraph(), 6);
        assert!(b.t_log2.is_none() && b.m.is_none());
    }
}
