//! Sturm-chain isolation for square-free integer polynomials.
//!
//! The chain is the classical primitive pseudo-remainder sequence with signs
//! kept faithful to the rational remainders (positive scaling only), so sign
//! variations obey the Sturm count: V(a) - V(b) is the number of roots in
//! (a, b] whenever b is not a root. Variations are computed with zeros
//! skipped, which matches the right-limit convention at points where chain
//! members vanish.

use num::bigint::BigInt;

use crate::arith::{deg, derivative, neg, prem_keep_sign, primitive, Dyadic, SignEval};
use crate::error::Result;

pub struct SturmChain {
    rows: Vec<SignEval>,
}

impl SturmChain {
    pub fn new(g: &[BigInt]) -> SturmChain {
        let mut polys: Vec<Vec<BigInt>> = vec![primitive(g)];
        let d = derivative(g);
        if deg(&d).is_some() {
            polys.push(primitive(&d));
            loop {
                let k = polys.len();
                if deg(&polys[k - 1]) == Some(0) {
                    break;
                }
                let r = prem_keep_sign(&polys[k - 2], &polys[k - 1]);
                if deg(&r).is_none() {
                    break;
                }
                polys.push(primitive(&neg(&r)));
            }
        }
        SturmChain {
            rows: polys.iter().map(|p| SignEval::new(p)).collect(),
        }
    }

    pub fn variations(&self, x: Dyadic) -> usize {
        let mut count = 0usize;
        let mut last = 0i8;
        for row in &self.rows {
            let s = row.sign_at(x);
            if s != 0 {
                if last != 0 && s != last {
                    count += 1;
                }
                last = s;
            }
        }
        count
    }

    pub fn sign_g(&self, x: Dyadic) -> i8 {
        self.rows[0].sign_at(x)
    }
}

/// One isolated simple root of a square-free polynomial: either an exact
/// dyadic point (lo == hi) or an open interval (lo, hi) whose endpoints are
/// not roots and which contains exactly one root.
#[derive(Clone, Copy, Debug)]
pub struct IsolatedRoot {
    pub lo: Dyadic,
    pub hi: Dyadic,
    pub exact: bool,
}

/// Isolate all roots of square-free g in the open interval (-1, 1).
/// Precondition: g(-1) != 0 and g(1) != 0.
pub fn isolate_sturm(g: &[BigInt]) -> Result<Vec<IsolatedRoot>> {
    let chain = SturmChain::new(g);
    let a = Dyadic::from_int(-1);
    let b = Dyadic::from_int(1);
    debug_assert!(chain.sign_g(a) != 0 && chain.sign_g(b) != 0);
    let va = chain.variations(a);
    let vb = chain.variations(b);
    let mut out = Vec::new();
    // V(lo) - V(hi) counts roots in (lo, hi]; when an endpoint is itself a
    // recorded exact root, the node is flagged so the count excludes it and
    // the interval is never emitted with a root endpoint (refinement needs
    // sign-definite endpoints).
    struct Node {
        lo: Dyadic,
        hi: Dyadic,
        vl: usize,
        vh: usize,
        lo_is_root: bool,
        hi_is_root: bool,
    }
    let mut stack = vec![Node {
        lo: a,
        hi: b,
        vl: va,
        vh: vb,
        lo_is_root: false,
        hi_is_root: false,
    }];
    while let Some(nd) = stack.pop() {
        let count = (nd.vl - nd.vh).saturating_sub(nd.hi_is_root as usize);
        if count == 0 {
            continue;
        }
        if count == 1 && !nd.lo_is_root && !nd.hi_is_root {
            out.push(IsolatedRoot {
                lo: nd.lo,
                hi: nd.hi,
                exact: false,
            });
            continue;
        }
        let mid = Dyadic::midpoint(nd.lo, nd.hi)?;
        let vm = chain.variations(mid);
        let mid_is_root = chain.sign_g(mid) == 0;
        if mid_is_root {
            out.push(IsolatedRoot {
                lo: mid,
                hi: mid,
                exact: true,
            });
        }
        stack.push(Node {
            lo: nd.lo,
            hi: mid,
            vl: nd.vl,
            vh: vm,
            lo_is_root: nd.lo_is_root,
            hi_is_root: mid_is_root,
        });
        stack.push(Node {
            lo: mid,
            hi: nd.hi,
            vl: vm,
            vh: nd.vh,
            lo_is_root: mid_is_root,
            hi_is_root: nd.hi_is_root,
        });
    }
    out.sort_by(|p, q| p.lo.cmp(&q.lo));
    Ok(out)
}
