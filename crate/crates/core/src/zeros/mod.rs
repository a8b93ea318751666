//! Zero counts in a period for cosine polynomials and on the unit circle
//! for algebraic polynomials, exact or floating.
//!
//! The exact pipeline converts T(t) to Chebyshev form F(x) with x = cos t,
//! splits F into square-free classes carrying multiplicities, isolates the
//! class roots in [-1, 1] with exact integer arithmetic, and maps them back
//! to t: an interior root x0 of class multiplicity m gives zeros of
//! multiplicity m at +-arccos(x0); a root at x = +-1 gives a zero of
//! multiplicity 2m at t = 0 or t = -pi (cos t - x0 vanishes to second order
//! at the endpoints). The period is [-pi, pi), so the zero some texts place
//! at t = pi is reported at -pi.

mod descartes;
mod sturm;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::arith::{
    deg, exact_div, eval_bigint, squarefree_decomposition, Dyadic, SignEval,
};
use crate::error::{Error, Result};
use crate::poly::{CosinePoly, Poly};
use crate::transforms::{chebyshev_combine_int, eval_cosine_f64, CHEBYSHEV_MAX_DEGREE};

pub use self::descartes::isolate_descartes;
pub use self::sturm::{isolate_sturm, IsolatedRoot, SturmChain};

/// Degree cutoff between the chain isolator and the bisection isolator.
/// Chains honor the classical construction and are cheap here; past this
/// point their coefficient growth dominates and bisection wins.
pub const STURM_MAX_DEGREE: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CountMethod {
    ExactSturm,
    ExactDescartes,
    FloatGrid,
}

impl CountMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            CountMethod::ExactSturm => "exact-sturm",
            CountMethod::ExactDescartes => "exact-descartes",
            CountMethod::FloatGrid => "float-grid",
        }
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self, CountMethod::FloatGrid)
    }
}

impl Serialize for CountMethod {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

/// One distinct zero: location in [-pi, pi), multiplicity, and whether the
/// count at this zero is certified (exact arithmetic) or numerical.
#[derive(Clone, Copy, Debug)]
pub struct ZeroEntry {
    pub location: f64,
    pub multiplicity: usize,
    pub certified: bool,
}

#[derive(Clone, Debug)]
pub struct ZeroReport {
    pub distinct: Vec<ZeroEntry>,
    pub total_with_multiplicity: usize,
    pub method: CountMethod,
}

impl Serialize for ZeroEntry {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("ZeroEntry", 3)?;
        st.serialize_field("location", &format_sig12(self.location))?;
        st.serialize_field("multiplicity", &self.multiplicity)?;
        st.serialize_field("certified", &self.certified)?;
        st.end()
    }
}

impl Serialize for ZeroReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("ZeroReport", 3)?;
        st.serialize_field("distinct", &self.distinct)?;
        st.serialize_field("total_with_multiplicity", &self.total_with_multiplicity)?;
        st.serialize_field("method", &self.method)?;
        st.end()
    }
}

/// Decimal rendering with 12 significant digits; plain notation in a wide
/// magnitude window, scientific outside it.
pub fn format_sig12(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let mag = x.abs().log10().floor() as i32;
    if (-4..=14).contains(&mag) {
        let decimals = (11 - mag).max(0) as usize;
        format!("{x:.decimals$}")
    } else {
        format!("{x:.11e}")
    }
}

fn assemble(mut entries: Vec<ZeroEntry>, method: CountMethod) -> ZeroReport {
    entries.sort_by(|a, b| a.location.partial_cmp(&b.location).expect("finite"));
    let total = entries.iter().map(|e| e.multiplicity).sum();
    ZeroReport {
        distinct: entries,
        total_with_multiplicity: total,
        method,
    }
}

/// Exact count of the zeros of T(t) = sum c_j cos(jt) in the period
/// [-pi, pi), with multiplicities. Certified; locations are floating
/// renderings of exactly isolated roots (interval half-width at most 1e-12,
/// tightened further where arccos is ill-conditioned).
pub fn count_period_zeros_exact(c: &CosinePoly) -> Result<ZeroReport> {
    if c.is_zero() {
        return Err(Error::DegenerateInput(
            "the zero cosine polynomial vanishes everywhere".into(),
        ));
    }
    if c.degree() > CHEBYSHEV_MAX_DEGREE {
        return Err(Error::Capacity(format!(
            "degree {} exceeds the exact cap {CHEBYSHEV_MAX_DEGREE}; use the floating path",
            c.degree()
        )));
    }
    let (ci, _den) = c.to_integer_scaled();
    let f = chebyshev_combine_int(&ci);
    let (entries, used_descartes) = count_chebyshev_roots(&f, true)?;
    let method = if used_descartes {
        CountMethod::ExactDescartes
    } else {
        CountMethod::ExactSturm
    };
    Ok(assemble(entries, method))
}

/// Shared exact engine: expects the integer Chebyshev form F. When
/// `double_endpoints` is set, a root at x = +-1 of class multiplicity m is
/// reported with t-multiplicity 2m (period-zero semantics for T); otherwise
/// endpoint roots must not occur and are rejected. The flag in the return
/// says whether any square-free class was isolated by bisection rather than
/// by a chain.
fn count_chebyshev_roots(
    f: &[BigInt],
    double_endpoints: bool,
) -> Result<(Vec<ZeroEntry>, bool)> {
    let df = deg(f).ok_or_else(|| {
        Error::DegenerateInput("Chebyshev form is identically zero".into())
    })?;
    let mut entries: Vec<ZeroEntry> = Vec::new();
    let mut used_descartes = false;
    if df == 0 {
        return Ok((entries, used_descartes));
    }
    let classes = squarefree_decomposition(f)?;
    let one = BigInt::one();
    let neg_one = -BigInt::one();
    for (mut g, m) in classes {
        if eval_bigint(&g, &one).is_zero() {
            if !double_endpoints {
                return Err(Error::Structure(
                    "unexpected root at x = 1 after endpoint stripping".into(),
                ));
            }
            entries.push(ZeroEntry {
                location: 0.0,
                multiplicity: 2 * m,
                certified: true,
            });
            g = exact_div(&g, &[neg_one.clone(), one.clone()]).expect("x - 1 divides");
        }
        if eval_bigint(&g, &neg_one).is_zero() {
            if !double_endpoints {
                return Err(Error::Structure(
                    "unexpected root at x = -1 after endpoint stripping".into(),
                ));
            }
            entries.push(ZeroEntry {
                location: -std::f64::consts::PI,
                multiplicity: 2 * m,
                certified: true,
            });
            g = exact_div(&g, &[one.clone(), one.clone()]).expect("x + 1 divides");
        }
        let dg = match deg(&g) {
            Some(d) if d >= 1 => d,
            _ => continue,
        };
        let roots = if dg <= STURM_MAX_DEGREE {
            isolate_sturm(&g)?
        } else {
            used_descartes = true;
            isolate_descartes(&g)?
        };
        let ev = SignEval::new(&g);
        for r in roots {
            let x0 = refine_root(&ev, r)?;
            let t = x0.acos();
            entries.push(ZeroEntry {
                location: t,
                multiplicity: m,
                certified: true,
            });
            entries.push(ZeroEntry {
                location: -t,
                multiplicity: m,
                certified: true,
            });
        }
    }
    Ok((entries, used_descartes))
}

/// Shrink an isolating interval until the mapped t = arccos(x) location is
/// pinned to 1e-12, returning the midpoint (or the exact root when bisection
/// lands on it).
fn refine_root(ev: &SignEval, r: IsolatedRoot) -> Result<f64> {
    if r.exact {
        return Ok(r.lo.to_f64());
    }
    let mut lo = r.lo;
    let mut hi = r.hi;
    let mut sl = ev.sign_at(lo);
    debug_assert!(sl != 0 && ev.sign_at(hi) == -sl);
    if sl == 0 {
        // defensive: treat an endpoint root as exact
        return Ok(lo.to_f64());
    }
    loop {
        let lf = lo.to_f64();
        let hf = hi.to_f64();
        let width = hf - lf;
        let xm = 0.5 * (lf + hf);
        let sine = (1.0 - xm * xm).max(1e-30).sqrt();
        if width / sine <= 1e-12 || width <= 1e-22 {
            return Ok(xm);
        }
        let mid = Dyadic::midpoint(lo, hi)?;
        let sm = ev.sign_at(mid);
        if sm == 0 {
            return Ok(mid.to_f64());
        }
        if sm == sl {
            lo = mid;
            sl = sm;
        } else {
            hi = mid;
        }
    }
}

/// Floating count of period zeros on a uniform grid: sign changes are
/// bisected, local extrema with |T| below `tol` and no sign change enter
/// as tangencies, and each detected zero is then assigned the order of
/// vanishing measured from the decay of |T| around it (odd across a sign
/// change, even at a tangency). Never certified.
pub fn count_period_zeros_float(c: &CosinePoly, grid_size: usize, tol: f64) -> Result<ZeroReport> {
    if c.is_zero() {
        return Err(Error::DegenerateInput(
            "the zero cosine polynomial vanishes everywhere".into(),
        ));
    }
    let n = c.degree();
    if grid_size < 8 * n.max(1) {
        return Err(Error::Precondition(format!(
            "grid size {grid_size} is below 8 * degree = {}",
            8 * n.max(1)
        )));
    }
    let cf: Vec<f64> = c
        .coeffs()
        .iter()
        .map(|x| num::ToPrimitive::to_f64(x).unwrap_or(f64::NAN))
        .collect();
    count_period_zeros_eval(|t| eval_cosine_f64(&cf, t), grid_size, tol)
}

/// Grid-based period zero count for any smooth 2 pi periodic real function.
/// The caller picks a grid dense enough to separate the zeros (for a
/// trigonometric sum, 8x the top frequency and up). Heuristic, never
/// certified: see [`count_period_zeros_float`] for the rules applied.
pub fn count_period_zeros_eval(
    eval: impl Fn(f64) -> f64,
    grid_size: usize,
    tol: f64,
) -> Result<ZeroReport> {
    if grid_size < 16 {
        return Err(Error::Precondition(format!(
            "grid size {grid_size} is below the minimum 16"
        )));
    }
    if !(tol > 0.0) {
        return Err(Error::Precondition("tolerance must be positive".into()));
    }
    let g = grid_size;
    let step = std::f64::consts::TAU / g as f64;
    let ts: Vec<f64> = (0..g)
        .map(|i| -std::f64::consts::PI + step * i as f64)
        .collect();
    let vs: Vec<f64> = ts.iter().map(|&t| eval(t)).collect();

    let sign = |v: f64| -> i8 {
        if v > 0.0 {
            1
        } else if v < 0.0 {
            -1
        } else {
            0
        }
    };
    let mut entries: Vec<ZeroEntry> = Vec::new();
    let mut crossing_segment = vec![false; g]; // segment i spans ts[i] .. ts[i+1 mod g]

    // exact grid hits: classify by neighbor signs (crossing vs tangency)
    for i in 0..g {
        if vs[i] == 0.0 {
            let sp = sign(vs[(i + g - 1) % g]);
            let sn = sign(vs[(i + 1) % g]);
            let mult = if sp != 0 && sp == sn { 2 } else { 1 };
            entries.push(ZeroEntry {
                location: ts[i],
                multiplicity: mult,
                certified: false,
            });
        }
    }
    // sign changes across segments, bisected to 1e-10
    for i in 0..g {
        let j = (i + 1) % g;
        let (si, sj) = (sign(vs[i]), sign(vs[j]));
        if si != 0 && sj != 0 && si != sj {
            crossing_segment[i] = true;
            let mut a = ts[i];
            let mut b = if j == 0 {
                std::f64::consts::PI
            } else {
                ts[j]
            };
            let mut fa = vs[i];
            while b - a > 1e-10 {
                let m = 0.5 * (a + b);
                let fm = eval(m);
                if fm == 0.0 {
                    a = m;
                    break;
                }
                if (fm > 0.0) == (fa > 0.0) {
                    a = m;
                    fa = fm;
                } else {
                    b = m;
                }
            }
            let mut t0 = 0.5 * (a + b);
            if t0 >= std::f64::consts::PI {
                t0 -= std::f64::consts::TAU;
            }
            entries.push(ZeroEntry {
                location: t0,
                multiplicity: 1,
                certified: false,
            });
        }
    }
    // tangency candidates: grid-local minima of |T| away from crossings
    for i in 0..g {
        let ip = (i + g - 1) % g;
        let inx = (i + 1) % g;
        if vs[i] == 0.0 || vs[ip] == 0.0 || vs[inx] == 0.0 {
            continue;
        }
        if crossing_segment[ip] || crossing_segment[i] {
            continue;
        }
        if sign(vs[ip]) != sign(vs[inx]) || sign(vs[i]) != sign(vs[ip]) {
            continue;
        }
        if vs[i].abs() > vs[ip].abs() || vs[i].abs() > vs[inx].abs() {
            continue;
        }
        // refine the extremum of s*T over (ts[ip], ts[ip] + 2h) by golden
        // section, then apply the tolerance test
        let s = sign(vs[i]) as f64;
        let mut a = ts[ip];
        let mut b = ts[ip] + 2.0 * step;
        let phi = 0.618_033_988_749_894_9_f64;
        let mut x1 = b - phi * (b - a);
        let mut x2 = a + phi * (b - a);
        let mut f1 = s * eval(x1);
        let mut f2 = s * eval(x2);
        for _ in 0..200 {
            if b - a < 1e-12 {
                break;
            }
            if f1 < f2 {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = b - phi * (b - a);
                f1 = s * eval(x1);
            } else {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + phi * (b - a);
                f2 = s * eval(x2);
            }
        }
        let mut t_star = 0.5 * (a + b);
        let v_star = eval(t_star);
        if v_star.abs() < tol {
            if t_star >= std::f64::consts::PI {
                t_star -= std::f64::consts::TAU;
            }
            if t_star < -std::f64::consts::PI {
                t_star += std::f64::consts::TAU;
            }
            entries.push(ZeroEntry {
                location: t_star,
                multiplicity: 2,
                certified: false,
            });
        }
    }
    // merge near-duplicates (adjacent minima can refine to one extremum)
    entries.sort_by(|a, b| a.location.partial_cmp(&b.location).expect("finite"));
    let mut merged: Vec<ZeroEntry> = Vec::new();
    for e in entries {
        match merged.last_mut() {
            Some(last) if (e.location - last.location).abs() < 1e-9 => {
                last.multiplicity = last.multiplicity.max(e.multiplicity);
            }
            _ => merged.push(e),
        }
    }
    // decay pass: the detection rules see parity (1 per crossing, 2 per
    // tangency), not order; measure the order of vanishing at each zero,
    // sampling inside a quarter of the gap to its neighbors so no other
    // zero contaminates the readings
    let vmax = vs.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let floor = vmax * 1e-13;
    let k = merged.len();
    for i in 0..k {
        let gap = if k == 1 {
            std::f64::consts::TAU
        } else {
            let t = merged[i].location;
            let before = (t - merged[(i + k - 1) % k].location).rem_euclid(std::f64::consts::TAU);
            let after = (merged[(i + 1) % k].location - t).rem_euclid(std::f64::consts::TAU);
            before.min(after)
        };
        let h0 = (0.25 * gap).min(0.05);
        if h0 < 1e-8 {
            continue;
        }
        merged[i].multiplicity =
            decay_order(&eval, merged[i].location, merged[i].multiplicity, h0, floor);
    }
    Ok(assemble(merged, CountMethod::FloatGrid))
}

/// Order of vanishing at a refined zero of a periodic function, from the
/// decay of r(h) = |f(t+h)| + |f(t-h)| under halving: near a zero of order
/// m the ratio r(h) / r(h/2) is 2^m + O(h). Scales shrink from h0 until
/// two consecutive estimates agree within 0.25; the locked value snaps to
/// the nearest integer of the same parity as `base`. Anything inconclusive,
/// out of range, or drowned by `floor` (the roundoff level of the samples)
/// keeps `base`, so cleanly detected simple zeros never drift.
fn decay_order(eval: &impl Fn(f64) -> f64, t: f64, base: usize, h0: f64, floor: f64) -> usize {
    let mut h = h0;
    let mut prev: Option<f64> = None;
    let mut locked: Option<f64> = None;
    for _ in 0..8 {
        let r1 = eval(t + h).abs() + eval(t - h).abs();
        let r2 = eval(t + 0.5 * h).abs() + eval(t - 0.5 * h).abs();
        h *= 0.5;
        if !(r1.is_finite() && r2.is_finite() && r1 > floor && r2 > floor) {
            continue;
        }
        let m = (r1 / r2).log2();
        if let Some(p) = prev {
            if (p - m).abs() < 0.25 {
                locked = Some(0.5 * (p + m));
                break;
            }
        }
        prev = Some(m);
    }
    let Some(m) = locked else { return base };
    let steps = ((m - base as f64) / 2.0).round();
    if !(0.0..=4.0).contains(&steps) {
        return base;
    }
    let snapped = base + 2 * steps as usize;
    if (m - snapped as f64).abs() <= 0.35 {
        snapped
    } else {
        base
    }
}

/// Exact count, with multiplicity, of the zeros of P on the unit circle.
///
/// Factors z^v, (z-1)^m1, (z+1)^m2 are stripped with exact division
/// (multiplicities measured in P itself); what remains shares its
/// unit-circle zeros with G = gcd(Q, reverse(Q)), which is self-reciprocal
/// of even degree with G(+-1) != 0, so G routes through the cosine pipeline.
/// For a root of unity z0 (equivalently: rational cos for the dyadic roots
/// the isolator can hit exactly) the multiplicity is re-measured against P
/// by repeated division by the minimal quadratic z^2 - 2 cos(theta) z + 1;
/// for the remaining roots the square-free class multiplicity in G already
/// equals the multiplicity in P, because gcd exponents are minima and
/// conjugate-reciprocal symmetry makes the two exponents equal.
pub fn nz_unit_circle(p: &Poly) -> Result<ZeroReport> {
    if p.is_zero() {
        return Err(Error::DegenerateInput("the zero polynomial".into()));
    }
    let (pi_full, _den) = p.to_integer_scaled();
    let mut q: Vec<BigInt> = pi_full.clone();
    crate::arith::trim(&mut q);
    let v = q.iter().position(|c| !c.is_zero()).expect("nonzero");
    q.drain(..v);

    let one = BigInt::one();
    let neg_one = -BigInt::one();
    let mut m1 = 0usize;
    while eval_bigint(&q, &one).is_zero() {
        q = exact_div(&q, &[neg_one.clone(), one.clone()]).expect("z - 1 divides");
        m1 += 1;
    }
    let mut m2 = 0usize;
    let mut q_at_neg1 = eval_bigint(&q, &neg_one);
    while q_at_neg1.is_zero() {
        q = exact_div(&q, &[one.clone(), one.clone()]).expect("z + 1 divides");
        q_at_neg1 = eval_bigint(&q, &neg_one);
        m2 += 1;
    }

    let mut entries: Vec<ZeroEntry> = Vec::new();
    if m1 > 0 {
        entries.push(ZeroEntry {
            location: 0.0,
            multiplicity: m1,
            certified: true,
        });
    }
    if m2 > 0 {
        entries.push(ZeroEntry {
            location: -std::f64::consts::PI,
            multiplicity: m2,
            certified: true,
        });
    }

    let dq = deg(&q).unwrap_or(0);
    let mut method = CountMethod::ExactSturm;
    if dq >= 1 {
        let mut qr = q.clone();
        qr.reverse();
        let g = crate::arith::gcd_primitive(&q, &qr);
        let dg = deg(&g).unwrap_or(0);
        if dg >= 1 {
            debug_assert!(dg % 2 == 0, "reciprocal gcd has even degree");
            let h = dg / 2;
            // cosine form of G: c_0 = g_h, c_j = 2 g_{h+j}
            let mut ci: Vec<BigInt> = Vec::with_capacity(h + 1);
            ci.push(g[h].clone());
            for j in 1..=h {
                ci.push(&g[h + j] << 1);
            }
            if deg(&ci).map_or(0, |d| d) > CHEBYSHEV_MAX_DEGREE {
                return Err(Error::Capacity(format!(
                    "reciprocal core degree {dg} exceeds the exact cap"
                )));
            }
            let f = chebyshev_combine_int(&ci);
            let classes = squarefree_decomposition(&f)?;
            for (g_class, m) in classes {
                let dgc = match deg(&g_class) {
                    Some(d) if d >= 1 => d,
                    _ => continue,
                };
                debug_assert!(
                    !eval_bigint(&g_class, &one).is_zero()
                        && !eval_bigint(&g_class, &neg_one).is_zero(),
                    "endpoint roots were stripped from P"
                );
                let roots = if dgc <= STURM_MAX_DEGREE {
                    isolate_sturm(&g_class)?
                } else {
                    method = CountMethod::ExactDescartes;
                    isolate_descartes(&g_class)?
                };
                let ev = SignEval::new(&g_class);
                for r in roots {
                    let mult = if r.exact {
                        multiplicity_at_rational_cos(&pi_full, r.lo)
                    } else {
                        m
                    };
                    debug_assert_eq!(mult, m, "gcd class multiplicity equals multiplicity in P");
                    let x0 = refine_root(&ev, r)?;
                    let t = x0.acos();
                    entries.push(ZeroEntry {
                        location: t,
                        multiplicity: mult,
                        certified: true,
                    });
                    entries.push(ZeroEntry {
                        location: -t,
                        multiplicity: mult,
                        certified: true,
                    });
                }
            }
        }
    }
    Ok(assemble(entries, method))
}

/// Multiplicity in P of the conjugate pair e^{+-i theta} with
/// cos(theta) = x0 dyadic: repeated exact division by the primitive form of
/// z^2 - 2 x0 z + 1.
fn multiplicity_at_rational_cos(p: &[BigInt], x0: Dyadic) -> usize {
    let scale = BigInt::one() << (x0.k as usize);
    let quad = crate::arith::primitive(&[
        scale.clone(),
        BigInt::from(-2) * BigInt::from(x0.num),
        scale,
    ]);
    let mut m = 0usize;
    let mut cur = p.to_vec();
    while let Some(next) = exact_div(&cur, &quad) {
        cur = next;
        m += 1;
    }
    m
}

/// Floating unit-circle count for inputs whose core is mirror-symmetric
/// after stripping z^v, (z-1)^m1, (z+1)^m2 exactly (Legendre-symbol
/// polynomials always are). The stripped multiplicities are exact but the
/// report is still uncertified, matching the floating method contract.
pub fn nz_unit_circle_float(p: &Poly, grid_size: usize, tol: f64) -> Result<ZeroReport> {
    if p.is_zero() {
        return Err(Error::DegenerateInput("the zero polynomial".into()));
    }
    let (pi_full, _den) = p.to_integer_scaled();
    let mut q = pi_full;
    crate::arith::trim(&mut q);
    let v = q.iter().position(|c| !c.is_zero()).expect("nonzero");
    q.drain(..v);
    let one = BigInt::one();
    let neg_one = -BigInt::one();
    let mut m1 = 0usize;
    while eval_bigint(&q, &one).is_zero() {
        q = exact_div(&q, &[neg_one.clone(), one.clone()]).expect("z - 1 divides");
        m1 += 1;
    }
    let mut m2 = 0usize;
    while eval_bigint(&q, &neg_one).is_zero() {
        q = exact_div(&q, &[one.clone(), one.clone()]).expect("z + 1 divides");
        m2 += 1;
    }
    let mut entries: Vec<ZeroEntry> = Vec::new();
    if m1 > 0 {
        entries.push(ZeroEntry {
            location: 0.0,
            multiplicity: m1,
            certified: false,
        });
    }
    if m2 > 0 {
        entries.push(ZeroEntry {
            location: -std::f64::consts::PI,
            multiplicity: m2,
            certified: false,
        });
    }
    let dq = deg(&q).unwrap_or(0);
    if dq >= 1 {
        let sym = (0..=dq).all(|j| q[j] == q[dq - j]);
        if !sym || dq % 2 != 0 {
            return Err(Error::Structure(
                "floating route needs a mirror-symmetric even-degree core after stripping \
                 z, z - 1, and z + 1"
                    .into(),
            ));
        }
        let h = dq / 2;
        let mut c: Vec<BigRational> = Vec::with_capacity(h + 1);
        c.push(BigRational::from_integer(q[h].clone()));
        for j in 1..=h {
            c.push(BigRational::from_integer(&q[h + j] << 1));
        }
        let t = CosinePoly::new(c)?;
        let inner = count_period_zeros_float(&t, grid_size, tol)?;
        entries.extend(inner.distinct);
    }
    Ok(assemble(entries, CountMethod::FloatGrid))
}
