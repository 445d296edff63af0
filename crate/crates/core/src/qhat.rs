//! Fixed-point-ratio certificates: the class sum `Q̂(G,τ)`, the aggregated
//! bound, class-size floors `f_s(m)` and the closed-form large-degree
//! certificate for primitive pairs in `S_n`/`A_n`.
//!
//! Everything that issues a certificate is exact; the scalar parameter only
//! chooses how the already-exact values are *reported*.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::actions::CosetAction;
use crate::grp::{prime_order_class_reps, ClassDatum, PermGroup};
use crate::perm::Perm;
use crate::search;
use crate::util::{self, ceil_half_minus_sqrt, ceil_log2, ceil_two_sqrt, factorial};
use crate::Error;

/// Number type a report is rendered in.
pub trait Scalar: Clone + PartialOrd + fmt::Debug + fmt::Display + num_traits::Num {
    /// Whether comparisons in this type are exact (only then is a
    /// certificate issued).
    const EXACT: bool;
    fn from_ratio(r: &BigRational) -> Self;
}

impl Scalar for BigRational {
    const EXACT: bool = true;
    fn from_ratio(r: &BigRational) -> Self {
        r.clone()
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;
    fn from_ratio(r: &BigRational) -> Self {
        ratio_to_f64(r)
    }
}

impl Scalar for f32 {
    const EXACT: bool = false;
    fn from_ratio(r: &BigRational) -> Self {
        ratio_to_f64(r) as f32
    }
}

/// `f64` value of a (possibly huge) rational, without overflow in the parts.
pub fn ratio_to_f64(r: &BigRational) -> f64 {
    let (n, d) = (r.numer(), r.denom());
    let shift = n.bits().max(d.bits()).saturating_sub(1000) as usize;
    let n = (n >> shift).to_f64().unwrap_or(f64::NAN);
    let d = (d >> shift).to_f64().unwrap_or(f64::NAN);
    n / d
}

pub fn rat(n: BigUint, d: BigUint) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// One prime-order class and its share of `Q̂`.
#[derive(Clone, Debug)]
pub struct ClassContribution<T> {
    /// Cycle type of the representative, e.g. `2^2 1`.
    pub label: String,
    pub r: u64,
    pub class_size: BigUint,
    /// `|x^G ∩ H_j|` per component.
    pub meets: Vec<BigUint>,
    pub fprs: Vec<T>,
    pub contrib: T,
}

#[derive(Clone, Debug)]
pub struct QhatReport<T> {
    pub tag: String,
    pub contributions: Vec<ClassContribution<T>>,
    pub total: T,
    /// `total < 1`, only ever set from exact arithmetic.
    pub certified_regular: bool,
}

impl<T: Scalar> QhatReport<T> {
    /// Report lines: one per class, then the total.
    pub fn lines(&self) -> Vec<String> {
        let mut out: Vec<String> = self
            .contributions
            .iter()
            .map(|c| {
                let fprs: Vec<String> = c.fprs.iter().map(|f| f.to_string()).collect();
                format!(
                    "class={} size={} fprs={} contrib={}",
                    c.label,
                    c.class_size,
                    fprs.join(","),
                    c.contrib
                )
            })
            .collect();
        out.push(format!(
            "QHAT={} CERTIFIED={}",
            self.total, self.certified_regular
        ));
        out
    }
}

pub fn cycle_type_label(x: &Perm) -> String {
    let ct = x.analyze().cycle_type;
    let mut parts: Vec<String> = Vec::new();
    let mut i = 0;
    while i < ct.len() {
        let mut j = i;
        while j < ct.len() && ct[j] == ct[i] {
            j += 1;
        }
        parts.push(if j - i == 1 {
            ct[i].to_string()
        } else {
            format!("{}^{}", ct[i], j - i)
        });
        i = j;
    }
    parts.join(" ")
}

/// Index of the `G`-class (in `classes`) containing `y`.
pub fn identify_class(g: &PermGroup, classes: &[ClassDatum], y: &Perm) -> Result<usize, Error> {
    let o = y.order_u64();
    let ct = y.analyze().cycle_type;
    let cands: Vec<usize> = (0..classes.len())
        .filter(|&i| classes[i].r == o && classes[i].rep.analyze().cycle_type == ct)
        .collect();
    match cands.len() {
        0 => Err(Error::IncompleteClasses(format!("no class for {y}"))),
        1 => Ok(cands[0]),
        _ => cands
            .into_iter()
            .find(|&i| search::is_conjugate(g, &classes[i].rep, y).is_some())
            .ok_or_else(|| Error::IncompleteClasses(format!("no class for {y}"))),
    }
}

/// `|x^G ∩ H|` for every class, by fusing the prime-order classes of `H`.
pub fn class_meets(
    g: &PermGroup,
    classes: &[ClassDatum],
    h: &PermGroup,
) -> Result<Vec<BigUint>, Error> {
    let mut out = vec![BigUint::zero(); classes.len()];
    for d in prime_order_class_reps(h)? {
        let i = identify_class(g, classes, &d.rep)?;
        out[i] += d.class_size;
    }
    Ok(out)
}

/// `|x^G ∩ H| = fix(x, G/H) · |x^G| / |G:H|`, from the coset action.
pub fn class_meets_by_fixed_points(
    a: &CosetAction,
    classes: &[ClassDatum],
) -> Result<Vec<BigUint>, Error> {
    classes
        .iter()
        .map(|d| {
            let fix = BigUint::from(a.fixed_points(&d.rep)?);
            let num = fix * &d.class_size;
            let idx = BigUint::from(a.index());
            if !(&num % &idx).is_zero() {
                return Err(Error::Verification("fixed-point count not integral".into()));
            }
            Ok(num / idx)
        })
        .collect()
}

/// `Q̂` from precomputed per-component meets (`meets[j][i]` for class `i`).
pub fn qhat_from_meets<T: Scalar>(
    classes: &[ClassDatum],
    meets: &[&[BigUint]],
    tag: &str,
) -> QhatReport<T> {
    let k = meets.len();
    let mut total = BigRational::zero();
    let mut contributions = Vec::with_capacity(classes.len());
    for (i, d) in classes.iter().enumerate() {
        let prod: BigUint = meets.iter().map(|m| m[i].clone()).product();
        // |x^G|^{1−k} ∏ |x^G ∩ H_j|
        let exact = if k == 0 {
            rat_int(d.class_size.clone())
        } else {
            rat(prod, d.class_size.pow(k as u32 - 1))
        };
        total += &exact;
        contributions.push(ClassContribution {
            label: cycle_type_label(&d.rep),
            r: d.r,
            class_size: d.class_size.clone(),
            meets: meets.iter().map(|m| m[i].clone()).collect(),
            fprs: meets
                .iter()
                .map(|m| T::from_ratio(&rat(m[i].clone(), d.class_size.clone())))
                .collect(),
            contrib: T::from_ratio(&exact),
        });
    }
    let certified = T::EXACT && total < BigRational::one();
    QhatReport {
        tag: tag.to_string(),
        contributions,
        total: T::from_ratio(&total),
        certified_regular: certified,
    }
}

/// `Q̂(G, τ)` for the tuple `comps`.
pub fn qhat<T: Scalar>(
    g: &PermGroup,
    comps: &[PermGroup],
    tag: &str,
) -> Result<QhatReport<T>, Error> {
    let classes = prime_order_class_reps(g)?;
    let meets: Vec<Vec<BigUint>> = comps
        .iter()
        .map(|h| class_meets(g, &classes, h))
        .collect::<Result<_, _>>()?;
    let refs: Vec<&[BigUint]> = meets.iter().map(|v| v.as_slice()).collect();
    Ok(qhat_from_meets(&classes, &refs, tag))
}

/// `B^{1−k} ∏ A_j`.
pub fn favbound(a: &[BigUint], b: &BigUint, k: u32) -> BigRational {
    assert!(!b.is_zero() && !a.is_empty());
    let prod: BigUint = a.iter().product();
    if k == 0 {
        return rat_int(prod * b);
    }
    rat(prod, b.pow(k - 1))
}

/// `f_s(m) = n!/(s^{m/s} ⌈m/s⌉! (n−m)!)` with the power rounded up to
/// `s^{⌈m/s⌉}` (exact when `s | m`; a smaller, hence safe, floor otherwise).
pub fn f_floor(n: u64, m: u64, s: u64) -> BigRational {
    assert!((1..=n).contains(&m) && (s == 2 || s == 3));
    let c = m.div_ceil(s);
    rat(
        factorial(n),
        BigUint::from(s).pow(c as u32) * factorial(c) * factorial(n - m),
    )
}

/// Exact test of `size ≥ f_s(m)` with the real power `s^{m/s}`:
/// `(size · ⌈m/s⌉! (n−m)!)^s · s^m ≥ (n!)^s`.
pub fn f_floor_holds(n: u64, m: u64, s: u64, size: &BigUint) -> bool {
    let c = m.div_ceil(s);
    let lhs =
        (size * factorial(c) * factorial(n - m)).pow(s as u32) * BigUint::from(s).pow(m as u32);
    lhs >= factorial(n).pow(s as u32)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Regime {
    /// Primitive subgroups in general: support at least `⌈2√n⌉`.
    General,
    /// Minimal degree at least `n/2 − √n`.
    LargeMinDeg,
}

/// Parameters derived from the degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BoundInputs {
    pub n: u64,
    /// `⌈2√n⌉`
    pub ell: u64,
    /// `⌈n/2 − √n⌉`
    pub ell_prime: u64,
}

impl BoundInputs {
    pub fn new(n: u64) -> BoundInputs {
        BoundInputs {
            n,
            ell: ceil_two_sqrt(n),
            ell_prime: ceil_half_minus_sqrt(n),
        }
    }
}

/// Lower bound on `|x^G|` for `x` of prime order `r` in a primitive subgroup.
pub fn class_floor(n: u64, r: u64, regime: Regime) -> BigRational {
    let b = BoundInputs::new(n);
    match regime {
        Regime::General if r == 2 => f_floor(n, b.ell, 2),
        Regime::General => f_floor(n, b.ell, 3),
        Regime::LargeMinDeg => f_floor(n, b.ell_prime, 2),
    }
}

/// `n^{1+⌈log₂ n⌉}`.
pub fn maroti_order_bound(n: u64) -> BigUint {
    BigUint::from(n).pow(1 + ceil_log2(n))
}

/// Least `E` with `6E + 1 ≥ √n`, so `5^E ≥ 5^{(√n−1)/6}`.
pub fn five_power_exponent(n: u64) -> u32 {
    let mut e = 0u64;
    while (6 * e + 1) * (6 * e + 1) < n {
        e += 1;
    }
    e as u32
}

#[derive(Clone, Debug)]
pub struct InvolutionBounds {
    /// `5^{(n−1)/6} √|H|` (floating, for display).
    pub frob_schur: f64,
    /// `⌈√n⌉! (1 + 5^{E})²` with `E` rounded up.
    pub primitive_corollary: BigRational,
}

pub fn i2_bounds(n: u64, order: &BigUint) -> InvolutionBounds {
    let frob_schur =
        5f64.powf((n as f64 - 1.0) / 6.0) * ratio_to_f64(&rat_int(order.clone())).sqrt();
    let five = BigUint::from(5u32).pow(five_power_exponent(n));
    let c = factorial(util::ceil_sqrt(n)) * (BigUint::one() + five).pow(2);
    InvolutionBounds {
        frob_schur,
        primitive_corollary: rat_int(c),
    }
}

/// Exact form of `i₂ ≤ 5^{(n−1)/6} √|H|`: `i₂⁶ ≤ 5^{n−1} |H|³`.
pub fn frob_schur_holds(n: u64, i2: &BigUint, order: &BigUint) -> bool {
    i2.pow(6) <= BigUint::from(5u32).pow((n - 1) as u32) * order.pow(3)
}

#[derive(Clone, Debug)]
pub struct PairCertificate {
    pub n: u64,
    pub inputs: BoundInputs,
    /// Bound when one component has minimal degree ≥ n/2 − √n.
    pub large_mindeg_expr: BigRational,
    /// Involution contribution bound.
    pub alpha: BigRational,
    /// Odd-prime contribution bound.
    pub beta: BigRational,
    pub certified: bool,
}

/// The closed-form certificate that every primitive pair of `S_n`/`A_n` is
/// regular, evaluated exactly with non-integral powers rounded up.
pub fn primitive_pair_certificate(n: u64) -> Result<PairCertificate, Error> {
    if n < 60 {
        return Err(Error::Precondition(format!(
            "certificate needs n ≥ 60, got {n}"
        )));
    }
    let inputs = BoundInputs::new(n);
    let nf = factorial(n);
    let lp = inputs.ell_prime;
    let large = rat(
        BigUint::from(n).pow(2 + 2 * ceil_log2(n))
            * BigUint::from(2u32).pow(lp.div_ceil(2) as u32)
            * factorial(lp.div_ceil(2))
            * factorial(n - lp),
        nf.clone(),
    );
    let m = inputs.ell;
    let sq = factorial(util::ceil_sqrt(n));
    let inv = &sq * (BigUint::one() + BigUint::from(5u32).pow(five_power_exponent(n))).pow(2);
    let alpha = rat(
        inv.pow(2)
            * BigUint::from(2u32).pow(m.div_ceil(2) as u32)
            * factorial(m.div_ceil(2))
            * factorial(n - m),
        nf.clone(),
    );
    let beta = rat(
        BigUint::from(4u32)
            * sq.pow(4)
            * BigUint::from(3u32).pow(m.div_ceil(3) as u32)
            * factorial(m.div_ceil(3))
            * factorial(n - m),
        nf,
    );
    let one = BigRational::one();
    let certified = large < one && alpha < one && beta < one && (&alpha + &beta) < one;
    Ok(PairCertificate {
        n,
        inputs,
        large_mindeg_expr: large,
        alpha,
        beta,
        certified,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grp::prime_order_classes_enumerated;

    fn p(s: &str, n: usize) -> Perm {
        Perm::parse(s, n).unwrap()
    }

    #[test]
    fn floors() {
        assert_eq!(f_floor(5, 2, 2), rat_int(BigUint::from(10u32)));
        assert_eq!(f_floor(6, 6, 3), rat_int(BigUint::from(40u32)));
        assert!(f_floor_holds(5, 2, 2, &BigUint::from(10u32)));
        assert!(!f_floor_holds(5, 2, 2, &BigUint::from(9u32)));
        assert!(class_floor(60, 2, Regime::General) <= class_floor(60, 3, Regime::General));
    }

    #[test]
    fn bound_inputs_at_60() {
        let b = BoundInputs::new(60);
        assert_eq!((b.ell, b.ell_prime), (16, 23));
        assert_eq!(maroti_order_bound(60), BigUint::from(60u32).pow(7));
    }

    #[test]
    fn favbound_algebra() {
        let a = BigUint::from(17u32);
        assert_eq!(
            favbound(std::slice::from_ref(&a), &BigUint::from(5u32), 1),
            rat_int(a.clone())
        );
        assert_eq!(favbound(&[a.clone(), a.clone()], &a, 2), rat_int(a));
    }

    #[test]
    fn certificate_at_60() {
        let c = primitive_pair_certificate(60).unwrap();
        assert!(c.certified);
        assert_eq!(c.inputs.ell_prime, 23);
        assert!(primitive_pair_certificate(59).is_err());
    }

    #[test]
    fn trivial_component_gives_zero() {
        let s5 = PermGroup::symmetric(5);
        let r: QhatReport<BigRational> =
            qhat(&s5, &[PermGroup::trivial(5), s5.point_stabilizer(0)], "t").unwrap();
        assert!(r.total.is_zero());
        assert!(r.certified_regular);
        let f: QhatReport<f64> = qhat(&s5, &[s5.point_stabilizer(0)], "t").unwrap();
        assert!(!f.certified_regular);
    }

    #[test]
    fn meets_two_routes_agree() {
        let m11 = PermGroup::new(
            11,
            vec![
                p("(1,2,3,4,5,6,7,8,9,10,11)", 11),
                p("(3,7,11,8)(4,10,5,6)", 11),
            ],
        )
        .unwrap();
        let classes = prime_order_classes_enumerated(&m11);
        let h = m11.point_stabilizer(0);
        let a = class_meets(&m11, &classes, &h).unwrap();
        let act = CosetAction::new(&m11, &h).unwrap();
        let b = class_meets_by_fixed_points(&act, &classes).unwrap();
        assert_eq!(a, b);
    }
}
