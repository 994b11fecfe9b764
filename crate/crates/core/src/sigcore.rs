//! Signatures, pair types and the generalized trigonometric functions.
//!
//! The three function families `C`, `S`, `T` coincide with
//! `cos`/`sin`/`tan` for `k = 1`, with `1`/`φ`/`φ` for `k = 0` and with
//! `cosh`/`sinh`/`tanh` for `k = -1`.

use std::fmt;
use std::str::FromStr;

use crate::error::{GeomError, Result};
use crate::tol::eps;

/// A pair type `K_ij`: a finite type value or the reciprocal of zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PairType {
    Finite(i8),
    Infinite,
}

impl PairType {
    /// The finite value, if any.
    #[must_use]
    pub fn finite(self) -> Option<i8> {
        match self {
            PairType::Finite(v) => Some(v),
            PairType::Infinite => None,
        }
    }

    #[must_use]
    pub fn recip(self) -> PairType {
        match self {
            PairType::Finite(0) => PairType::Infinite,
            PairType::Finite(v) => PairType::Finite(v),
            PairType::Infinite => PairType::Finite(0),
        }
    }

    /// Product of two pair types. `0 · Infinite` has no value and is an error.
    pub fn mul(self, other: PairType) -> Result<PairType> {
        match (self, other) {
            (PairType::Finite(a), PairType::Finite(b)) => Ok(PairType::Finite(a * b)),
            (PairType::Finite(0), PairType::Infinite) | (PairType::Infinite, PairType::Finite(0)) => Err(
                GeomError::InconsistentSignature("product of zero and infinite pair types".into()),
            ),
            _ => Ok(PairType::Infinite),
        }
    }
}

impl fmt::Display for PairType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PairType::Finite(v) => write!(f, "{v}"),
            PairType::Infinite => f.write_str("inf"),
        }
    }
}

/// The signature `{k1, ..., kn}` of a homogeneous space.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Signature {
    k: Vec<i8>,
}

impl Signature {
    /// Build a signature, rejecting elements outside `{-1, 0, 1}`.
    pub fn new(k: Vec<i8>) -> Result<Self> {
        if let Some(bad) = k.iter().find(|v| !(-1..=1).contains(*v)) {
            return Err(GeomError::InvalidSignature(format!("element {bad} is not in {{-1,0,1}}")));
        }
        Ok(Signature { k })
    }

    /// Dimension `n`.
    #[must_use]
    pub fn dim(&self) -> usize {
        self.k.len()
    }

    /// The elements `k1..kn`.
    #[must_use]
    pub fn elements(&self) -> &[i8] {
        &self.k
    }

    /// Element `k_m`, 1-based.
    pub fn k(&self, m: usize) -> Result<i8> {
        if m == 0 || m > self.k.len() {
            return Err(GeomError::IndexOutOfRange { index: m, max: self.k.len() });
        }
        Ok(self.k[m - 1])
    }

    /// Cumulative type `K_m = k1 · ... · km`, with `K_0 = 1`.
    pub fn cumulative_type(&self, m: usize) -> Result<i8> {
        if m > self.k.len() {
            return Err(GeomError::IndexOutOfRange { index: m, max: self.k.len() });
        }
        Ok(self.k[..m].iter().product())
    }

    /// All cumulative types `K_0..K_n`.
    #[must_use]
    pub fn cumulative_types(&self) -> Vec<i8> {
        let mut out = Vec::with_capacity(self.k.len() + 1);
        let mut acc = 1i8;
        out.push(acc);
        for &v in &self.k {
            acc *= v;
            out.push(acc);
        }
        out
    }

    /// Pair type `K_ij`.
    pub fn pair_type(&self, i: usize, j: usize) -> Result<PairType> {
        let n = self.k.len();
        if i > n || j > n {
            return Err(GeomError::IndexOutOfRange { index: i.max(j), max: n });
        }
        Ok(self.pair_type_unchecked(i, j))
    }

    pub(crate) fn pair_type_unchecked(&self, i: usize, j: usize) -> PairType {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Equal => PairType::Finite(1),
            Less => PairType::Finite(self.k[i..j].iter().product()),
            Greater => PairType::Finite(self.k[j..i].iter().product()).recip(),
        }
    }

    /// `K_ij` for `i <= j`, which is always finite.
    #[must_use]
    pub fn forward_type(&self, i: usize, j: usize) -> i8 {
        let (lo, hi) = if i <= j { (i, j) } else { (j, i) };
        self.k[lo..hi].iter().product()
    }

    #[must_use]
    pub fn has_zero(&self) -> bool {
        self.k.contains(&0)
    }

    /// The signature `{kn, ..., k1}`.
    #[must_use]
    pub fn reversed(&self) -> Signature {
        Signature { k: self.k.iter().rev().copied().collect() }
    }

    /// All `3^n` signatures of dimension `n`, in lexicographic order of `(1, 0, -1)`.
    #[must_use]
    pub fn all_of_dim(n: usize) -> Vec<Signature> {
        let mut out = vec![Vec::new()];
        for _ in 0..n {
            out = out
                .into_iter()
                .flat_map(|v: Vec<i8>| {
                    [1i8, 0, -1].into_iter().map(move |x| {
                        let mut w = v.clone();
                        w.push(x);
                        w
                    })
                })
                .collect();
        }
        out.into_iter().map(|k| Signature { k }).collect()
    }

    /// The nine homogeneous planes.
    #[must_use]
    pub fn planes() -> Vec<Signature> {
        Self::all_of_dim(2)
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.k.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

impl FromStr for Signature {
    type Err = GeomError;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let inner = t
            .strip_prefix('{')
            .and_then(|r| r.strip_suffix('}'))
            .ok_or_else(|| GeomError::InvalidSignature(format!("expected braces: {s:?}")))?;
        if inner.trim().is_empty() {
            return Ok(Signature { k: Vec::new() });
        }
        let k = inner
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<i8>()
                    .map_err(|_| GeomError::InvalidSignature(format!("bad element {:?}", p.trim())))
            })
            .collect::<Result<Vec<_>>>()?;
        Signature::new(k)
    }
}

/// Values of the generalized trigonometric functions at one argument.
///
/// `t` is `±inf` when `c` is exactly zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Trig {
    pub c: f64,
    pub s: f64,
    pub t: f64,
}

/// Selects one of the three function families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrigFn {
    C,
    S,
    T,
}

/// `C(φ, k)`, `S(φ, k)` and `T(φ, k)`.
#[must_use]
pub fn gtrig(phi: f64, k: i8) -> Trig {
    let (c, s) = match k.signum() {
        1 => (phi.cos(), phi.sin()),
        0 => (1.0, phi),
        _ => (phi.cosh(), phi.sinh()),
    };
    let t = if c == 0.0 { f64::INFINITY.copysign(s) } else { s / c };
    Trig { c, s, t }
}

/// `gtrig` with a positive axis scale `r`: the argument is divided by `r`.
#[must_use]
pub fn gtrig_scaled(phi: f64, k: i8, r: f64) -> Trig {
    gtrig(phi / r, k)
}

#[must_use]
pub fn gc(phi: f64, k: i8) -> f64 {
    gtrig(phi, k).c
}

#[must_use]
pub fn gs(phi: f64, k: i8) -> f64 {
    gtrig(phi, k).s
}

#[must_use]
pub fn gt(phi: f64, k: i8) -> f64 {
    gtrig(phi, k).t
}

/// Principal inverse of one generalized trigonometric function.
///
/// For `k = 1` the branches are `[0, π]` for `C` and `[-π/2, π/2]` for `S`.
/// `C` with `k = 0` is constant and has no inverse.
pub fn gtrig_inverse(x: f64, which: TrigFn, k: i8) -> Result<f64> {
    let e = eps();
    let out_of = |what: &str| GeomError::DomainError(format!("{what}({x}) with k = {k}"));
    match (k.signum(), which) {
        (1, TrigFn::C) => {
            if x.abs() > 1.0 + e {
                return Err(out_of("C^-1"));
            }
            Ok(x.clamp(-1.0, 1.0).acos())
        }
        (1, TrigFn::S) => {
            if x.abs() > 1.0 + e {
                return Err(out_of("S^-1"));
            }
            Ok(x.clamp(-1.0, 1.0).asin())
        }
        (1, TrigFn::T) => Ok(x.atan()),
        (0, TrigFn::C) => {
            if (x - 1.0).abs() <= e {
                Err(GeomError::Undetermined("C^-1 with k = 0: C is identically 1".into()))
            } else {
                Err(out_of("C^-1"))
            }
        }
        (0, _) => Ok(x),
        (_, TrigFn::C) => {
            if x < 1.0 - e {
                return Err(out_of("C^-1"));
            }
            Ok(x.max(1.0).acosh())
        }
        (_, TrigFn::S) => Ok(x.asinh()),
        (_, TrigFn::T) => {
            if x.abs() >= 1.0 {
                return Err(out_of("T^-1"));
            }
            Ok(x.atanh())
        }
    }
}

/// Scaled inverse matching [`gtrig_scaled`].
pub fn gtrig_inverse_scaled(x: f64, which: TrigFn, k: i8, r: f64) -> Result<f64> {
    Ok(r * gtrig_inverse(x, which, k)?)
}

/// Angle `φ` whose `(C, S)` pair is proportional to `(x, y)` with a positive factor.
///
/// This is the generalized `atan2`. For `k = 0` and `k = -1` the pair must
/// have `x > 0`, and for `k = -1` also `|y| < x`.
pub fn gtrig_arg(x: f64, y: f64, k: i8) -> Result<f64> {
    match k.signum() {
        1 => {
            if x == 0.0 && y == 0.0 {
                return Err(GeomError::Undetermined("argument of the zero pair".into()));
            }
            Ok(y.atan2(x))
        }
        0 => {
            if x <= 0.0 {
                return Err(GeomError::UnmeasurableAngle(format!("pair ({x}, {y}) has no parabolic argument")));
            }
            Ok(y / x)
        }
        _ => {
            if x <= 0.0 || y.abs() >= x {
                return Err(GeomError::UnmeasurableAngle(format!("pair ({x}, {y}) has no hyperbolic argument")));
            }
            Ok((y / x).atanh())
        }
    }
}
