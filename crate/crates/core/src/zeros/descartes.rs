//! Bisection isolation with the Descartes 01-test, working on transformed
//! integer polynomials. Chain-free, so it stays fast at degrees in the
//! hundreds where pseudo-remainder sequences blow up.

use num::bigint::BigInt;
use num::Zero;

use crate::arith::{deg, exact_div, trim, Dyadic, SignEval};
use crate::error::{Error, Result};
use crate::zeros::sturm::IsolatedRoot;

const MAX_DEPTH: u32 = 110;

/// Taylor shift by +1 in place: a(y) becomes a(y + 1).
fn taylor_shift_1(a: &mut [BigInt]) {
    let n = a.len();
    for i in 0..n {
        for j in (i..n - 1).rev() {
            let t = a[j + 1].clone();
            a[j] += t;
        }
    }
}

/// Taylor shift by -1 in place: a(y) becomes a(y - 1).
fn taylor_shift_neg1(a: &mut [BigInt]) {
    let n = a.len();
    for i in 0..n {
        for j in (i..n - 1).rev() {
            let t = a[j + 1].clone();
            a[j] -= t;
        }
    }
}

/// Divide out the largest common power of two (positive scalar, sign-safe).
fn strip_2_content(a: &mut [BigInt]) {
    let mut min_tz: Option<u64> = None;
    for c in a.iter() {
        if !c.is_zero() {
            let tz = c.trailing_zeros().unwrap_or(0);
            min_tz = Some(min_tz.map_or(tz, |m: u64| m.min(tz)));
            if min_tz == Some(0) {
                return;
            }
        }
    }
    if let Some(s) = min_tz {
        for c in a.iter_mut() {
            if !c.is_zero() {
                *c >>= s as usize;
            }
        }
    }
}

/// Upper bound on the number of roots of q in the open interval (0, 1):
/// sign variations of the reversed-and-shifted polynomial. 0 and 1 are exact.
fn variations_01(q: &[BigInt]) -> usize {
    let d = deg(q).expect("nonzero polynomial");
    let mut w: Vec<BigInt> = q[..=d].to_vec();
    w.reverse();
    taylor_shift_1(&mut w);
    let mut count = 0usize;
    let mut last = 0i8;
    for c in &w {
        let s = match c.sign() {
            num::bigint::Sign::Minus => -1,
            num::bigint::Sign::NoSign => 0,
            num::bigint::Sign::Plus => 1,
        };
        if s != 0 {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
    }
    count
}

/// Isolate the roots of square-free g in the open interval (-1, 1).
/// Precondition: g(-1) != 0 and g(1) != 0. Intervals come back in the same
/// x coordinates as the input, sorted ascending.
pub fn isolate_descartes(g: &[BigInt]) -> Result<Vec<IsolatedRoot>> {
    let dg = match deg(g) {
        Some(d) if d >= 1 => d,
        _ => return Ok(Vec::new()),
    };
    // h(y) = g(2y - 1) maps (0,1) onto (-1,1): shift by -1, then y -> 2y
    let mut h: Vec<BigInt> = g[..=dg].to_vec();
    taylor_shift_neg1(&mut h);
    for (j, c) in h.iter_mut().enumerate() {
        *c <<= j;
    }
    strip_2_content(&mut h);

    // node (c, k, q): roots of q in (0,1) are the roots of h in
    // (c/2^k, (c+1)/2^k), up to exact dyadic roots already recorded
    let ev = SignEval::new(g);
    let mut deflated_any = false;
    let mut out: Vec<IsolatedRoot> = Vec::new();
    let mut stack: Vec<(i128, u32, Vec<BigInt>)> = vec![(0, 0, h)];
    while let Some((c, k, q)) = stack.pop() {
        let v = variations_01(&q);
        if v == 0 {
            continue;
        }
        if v == 1 {
            let lo = y_to_x(c, k)?;
            let hi = y_to_x(c + 1, k)?;
            // a deflated dyadic root of g may sit exactly on a cell
            // endpoint; such a cell must keep splitting so the emitted
            // interval has sign-definite endpoints
            if !(deflated_any && (ev.sign_at(lo) == 0 || ev.sign_at(hi) == 0)) {
                out.push(IsolatedRoot {
                    lo,
                    hi,
                    exact: false,
                });
                continue;
            }
        }
        if k + 1 > MAX_DEPTH {
            return Err(Error::Capacity(format!(
                "root isolation exceeded bisection depth {MAX_DEPTH}"
            )));
        }
        let d = deg(&q).expect("nonzero through the loop");
        // left child: 2^d q(y/2); right child: left shifted by +1
        let mut left: Vec<BigInt> = (0..=d).map(|j| &q[j] << (d - j)).collect();
        strip_2_content(&mut left);
        let mut right = left.clone();
        taylor_shift_1(&mut right);
        if right[0].is_zero() {
            // the split midpoint is an exact root; record it and deflate
            // both children so their endpoints are root-free
            deflated_any = true;
            let y_mid = Dyadic::new(2 * c + 1, k + 1)?;
            let x_mid = y_to_x_point(y_mid)?;
            out.push(IsolatedRoot {
                lo: x_mid,
                hi: x_mid,
                exact: true,
            });
            right.remove(0);
            trim(&mut right);
            // square-free input: the root is simple, no further y factor
            debug_assert!(!right.is_empty() && !right[0].is_zero());
            left = exact_div(&left, &[BigInt::from(-1), BigInt::from(1)])
                .expect("y - 1 divides the left child when the midpoint is a root");
            strip_2_content(&mut left);
            strip_2_content(&mut right);
        }
        stack.push((2 * c + 1, k + 1, right));
        stack.push((2 * c, k + 1, left));
    }
    out.sort_by(|p, q| p.lo.cmp(&q.lo));
    Ok(out)
}

fn y_to_x(c: i128, k: u32) -> Result<Dyadic> {
    // x = 2y - 1 with y = c / 2^k
    Ok(Dyadic::new(2 * c - (1i128 << k), k)?.normalized())
}

fn y_to_x_point(y: Dyadic) -> Result<Dyadic> {
    Ok(Dyadic::new(2 * y.num - (1i128 << y.k), y.k)?.normalized())
}
