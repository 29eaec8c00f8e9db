//! Candidate determinant functionals `D: V^n -> F` and exact residuals for
//! the main equation
//!
//! ```text
//! D(v_1, ..., v_n) * b = sum_k D(v_1, ..., b (slot k), ..., v_n) * v_k
//! ```
//!
//! together with multilinearity, antisymmetry and proportionality checks.
//! Residuals are exact field values; a report without a witness means every
//! sampled residual was exactly zero.

use std::fmt;
use std::str::FromStr;

use crate::determinant::det_elimination;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, VecTuple, Vector};
use crate::sampling::SplitMix64;
use crate::scalar::{Field, Scalar};

/// Something that can be evaluated on an n-tuple of vectors in F^d.
pub trait Functional {
    fn arity(&self) -> usize;

    fn ambient_dim(&self) -> usize;

    /// The field the functional is pinned to, if it carries constants.
    fn field(&self) -> Option<Field> {
        None
    }

    /// Value on a tuple already known to have the right shape.
    fn value(&self, t: &VecTuple) -> Scalar;

    fn evaluate(&self, t: &VecTuple) -> Result<Scalar> {
        check_tuple(self, t)?;
        Ok(self.value(t))
    }
}

fn check_tuple<F: Functional + ?Sized>(f: &F, t: &VecTuple) -> Result<()> {
    if t.arity() != f.arity() {
        return Err(Error::ArityMismatch {
            expected: f.arity(),
            found: t.arity(),
        });
    }
    if t.dim() != f.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: f.ambient_dim(),
            found: t.dim(),
        });
    }
    check_field(f, t.field())
}

fn check_field<F: Functional + ?Sized>(f: &F, field: Field) -> Result<()> {
    match f.field() {
        Some(own) if own != field => Err(Error::FieldMismatch {
            left: own,
            right: field,
        }),
        _ => Ok(()),
    }
}

fn check_vector<F: Functional + ?Sized>(f: &F, t: &VecTuple, v: &Vector) -> Result<()> {
    check_tuple(f, t)?;
    if v.field() != t.field() {
        return Err(Error::FieldMismatch {
            left: t.field(),
            right: v.field(),
        });
    }
    if v.dim() != t.dim() {
        return Err(Error::DimensionMismatch {
            expected: t.dim(),
            found: v.dim(),
        });
    }
    Ok(())
}

/// The closed set of functionals the harness and CLI know about.
///
/// Text syntax: `det:<n>`, `scaled:<c>:<inner>`, `lifted:<inner>`,
/// `xminusy`, `xy`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum DetFunctional {
    /// The normalized determinant of n vectors in F^n.
    StandardDet(usize),
    /// `c * inner`, c nonzero.
    Scaled(Scalar, Box<DetFunctional>),
    /// The lift of `inner` from V to F × V by expansion along the first
    /// coordinate.
    Lifted(Box<DetFunctional>),
    /// `D(x, y) = 0` if x or y is zero, else `x - y`, on V = F.
    /// Satisfies the main equation but V has dimension 1 < 2.
    XMinusY,
    /// `D(x, y) = x * y` on V = F.
    ProductXY,
}

impl DetFunctional {
    pub fn scaled(c: Scalar, inner: DetFunctional) -> Result<Self> {
        if c.is_zero() {
            return Err(Error::ZeroScaleFactor);
        }
        if let Some(f) = inner.field() {
            if f != c.field() {
                return Err(Error::FieldMismatch {
                    left: c.field(),
                    right: f,
                });
            }
        }
        Ok(DetFunctional::Scaled(c, Box::new(inner)))
    }

    /// Parses the descriptor syntax; constants are read in `field`.
    pub fn parse(text: &str, field: Field) -> Result<Self> {
        let bad = || Error::Parse(format!("malformed functional descriptor {text:?}"));
        match text {
            "xminusy" => return Ok(DetFunctional::XMinusY),
            "xy" => return Ok(DetFunctional::ProductXY),
            _ => {}
        }
        if let Some(n) = text.strip_prefix("det:") {
            if n.is_empty() || !n.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            let n: usize = n.parse().map_err(|_| bad())?;
            if n == 0 {
                return Err(bad());
            }
            return Ok(DetFunctional::StandardDet(n));
        }
        if let Some(rest) = text.strip_prefix("scaled:") {
            let (c, inner) = rest.split_once(':').ok_or_else(bad)?;
            let c = field.parse(c)?;
            if c.is_zero() {
                return Err(Error::Parse("scaled functional needs a nonzero constant".into()));
            }
            return DetFunctional::scaled(c, DetFunctional::parse(inner, field)?);
        }
        if let Some(inner) = text.strip_prefix("lifted:") {
            return Ok(DetFunctional::Lifted(Box::new(DetFunctional::parse(inner, field)?)));
        }
        Err(bad())
    }

    /// Which properties this functional is known to have over `field`.
    ///
    /// In characteristic 2 the pathological pair changes behaviour:
    /// `xminusy` vanishes identically and `xy` becomes antisymmetric.
    pub fn classification(&self, field: Field) -> Classification {
        let char2 = field.modulus() == Some(2);
        match self {
            DetFunctional::StandardDet(_) => Classification::all(Some(true)),
            DetFunctional::Scaled(_, inner) => inner.classification(field),
            DetFunctional::Lifted(inner) => {
                let c = inner.classification(field);
                if c.multilinear == Some(true) && c.antisymmetric == Some(true) {
                    Classification::all(Some(true))
                } else {
                    Classification {
                        main_equation: None,
                        multilinear: if c.multilinear == Some(true) { Some(true) } else { None },
                        antisymmetric: None,
                    }
                }
            }
            DetFunctional::XMinusY if char2 => Classification::all(Some(true)),
            DetFunctional::XMinusY => Classification {
                main_equation: Some(true),
                multilinear: Some(false),
                antisymmetric: Some(true),
            },
            DetFunctional::ProductXY => Classification {
                main_equation: Some(false),
                multilinear: Some(true),
                antisymmetric: Some(char2),
            },
        }
    }
}

impl Functional for DetFunctional {
    fn arity(&self) -> usize {
        match self {
            DetFunctional::StandardDet(n) => *n,
            DetFunctional::Scaled(_, inner) => inner.arity(),
            DetFunctional::Lifted(inner) => inner.arity() + 1,
            DetFunctional::XMinusY | DetFunctional::ProductXY => 2,
        }
    }

    fn ambient_dim(&self) -> usize {
        match self {
            DetFunctional::StandardDet(n) => *n,
            DetFunctional::Scaled(_, inner) => inner.ambient_dim(),
            DetFunctional::Lifted(inner) => inner.ambient_dim() + 1,
            DetFunctional::XMinusY | DetFunctional::ProductXY => 1,
        }
    }

    fn field(&self) -> Option<Field> {
        match self {
            DetFunctional::Scaled(c, _) => Some(c.field()),
            DetFunctional::Lifted(inner) => inner.field(),
            _ => None,
        }
    }

    fn value(&self, t: &VecTuple) -> Scalar {
        match self {
            DetFunctional::StandardDet(_) => det_elimination(&Matrix::from(t.clone())).expect("square by shape check"),
            DetFunctional::Scaled(c, inner) => c * &inner.value(t),
            DetFunctional::Lifted(inner) => lifted_value(inner, t),
            DetFunctional::XMinusY => {
                let (x, y) = (t.get(0).get(0), t.get(1).get(0));
                if x.is_zero() || y.is_zero() {
                    t.field().zero()
                } else {
                    x - y
                }
            }
            DetFunctional::ProductXY => t.get(0).get(0) * t.get(1).get(0),
        }
    }
}

/// `sum_i (-1)^i * p1(w_i) * D(p2(w_0), ..., p2(w_i) omitted, ...)` with
/// `p1` the first coordinate and `p2` the remaining ones.
fn lifted_value(inner: &DetFunctional, t: &VecTuple) -> Scalar {
    let field = t.field();
    let tails: Vec<Vector> = t
        .vectors()
        .iter()
        .map(|w| Vector::new(w.entries()[1..].to_vec()).expect("dim >= 2"))
        .collect();
    let mut acc = field.zero();
    for (i, w) in t.vectors().iter().enumerate() {
        let head = w.get(0);
        if head.is_zero() {
            continue;
        }
        let mut rest = VecTuple::empty(field, inner.ambient_dim());
        for (j, tail) in tails.iter().enumerate() {
            if j != i {
                rest.push(tail.clone()).expect("same space");
            }
        }
        let term = head * &inner.value(&rest);
        acc = if i % 2 == 0 { acc + term } else { acc - term };
    }
    acc
}

impl fmt::Display for DetFunctional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DetFunctional::StandardDet(n) => write!(f, "det:{n}"),
            DetFunctional::Scaled(c, inner) => write!(f, "scaled:{c}:{inner}"),
            DetFunctional::Lifted(inner) => write!(f, "lifted:{inner}"),
            DetFunctional::XMinusY => f.write_str("xminusy"),
            DetFunctional::ProductXY => f.write_str("xy"),
        }
    }
}

/// Expected outcome per property: `Some(true)` holds, `Some(false)` fails,
/// `None` not classified.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Classification {
    pub main_equation: Option<bool>,
    pub multilinear: Option<bool>,
    pub antisymmetric: Option<bool>,
}

impl Classification {
    fn all(v: Option<bool>) -> Self {
        Classification {
            main_equation: v,
            multilinear: v,
            antisymmetric: v,
        }
    }

    pub fn expected(&self, property: Property) -> Option<bool> {
        match property {
            Property::MainEquation => self.main_equation,
            Property::Multilinearity => self.multilinear,
            Property::Antisymmetry => self.antisymmetric,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Property {
    MainEquation,
    Multilinearity,
    Antisymmetry,
}

impl Property {
    pub const ALL: [Property; 3] = [Property::MainEquation, Property::Multilinearity, Property::Antisymmetry];
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Property::MainEquation => "main-equation",
            Property::Multilinearity => "multilinearity",
            Property::Antisymmetry => "antisymmetry",
        })
    }
}

impl FromStr for Property {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Property::ALL
            .into_iter()
            .find(|p| p.to_string() == s)
            .ok_or_else(|| Error::Parse(format!("unknown property `{s}`")))
    }
}

/// The extra inputs of a failing instance beyond the tuple itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Probe {
    MainEquation { b: Vector },
    Additivity { slot: usize, w: Vector },
    Homogeneity { slot: usize, s: Scalar },
    Antisymmetry { i: usize, j: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub tuple: VecTuple,
    pub probe: Probe,
    /// One entry for scalar residuals, `dim` entries for the main equation.
    pub residual: Vec<Scalar>,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "tuple {}, ", self.tuple)?;
        match &self.probe {
            Probe::MainEquation { b } => write!(f, "b {b}: residual ")?,
            Probe::Additivity { slot, w } => write!(f, "slot {slot}, w {w}: additivity residual ")?,
            Probe::Homogeneity { slot, s } => write!(f, "slot {slot}, s {s}: homogeneity residual ")?,
            Probe::Antisymmetry { i, j } => write!(f, "slots {i},{j}: antisymmetry residual ")?,
        }
        match self.residual.as_slice() {
            [r] if !matches!(self.probe, Probe::MainEquation { .. }) => write!(f, "{r}"),
            rs => write!(f, "{}", Vector::new(rs.to_vec()).map_err(|_| fmt::Error)?),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidualReport {
    pub property: Property,
    pub witness: Option<Witness>,
    pub trials_run: usize,
    pub seed: u64,
}

impl ResidualReport {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

/// `D(t) * b - sum_k D(t with slot k replaced by b) * v_k`.
pub fn main_equation_residual<F: Functional + ?Sized>(f: &F, t: &VecTuple, b: &Vector) -> Result<Vector> {
    check_vector(f, t, b)?;
    let mut residual = b.scale(&f.value(t));
    for (k, v) in t.vectors().iter().enumerate() {
        let replaced = t.with_replaced(k, b.clone())?;
        residual = residual.add_scaled(&-f.value(&replaced), v);
    }
    Ok(residual)
}

/// `(D(.., v_k + w, ..) - D(.., v_k, ..) - D(.., w, ..),
///   D(.., s * v_k, ..) - s * D(.., v_k, ..))`
pub fn multilinearity_residuals<F: Functional + ?Sized>(
    f: &F,
    t: &VecTuple,
    slot: usize,
    w: &Vector,
    s: &Scalar,
) -> Result<(Scalar, Scalar)> {
    check_vector(f, t, w)?;
    if s.field() != t.field() {
        return Err(Error::FieldMismatch {
            left: t.field(),
            right: s.field(),
        });
    }
    if slot >= t.arity() {
        return Err(Error::IndexOutOfRange {
            index: slot,
            len: t.arity(),
        });
    }
    let base = f.value(t);
    let v = t.get(slot);
    let sum = f.value(&t.with_replaced(slot, v.checked_add(w)?)?);
    let with_w = f.value(&t.with_replaced(slot, w.clone())?);
    let additivity = sum - &base - with_w;
    let scaled = f.value(&t.with_replaced(slot, v.scale(s))?);
    let homogeneity = scaled - s * &base;
    Ok((additivity, homogeneity))
}

/// `D(t) + D(t with slots i, j swapped)`.
pub fn antisymmetry_residual<F: Functional + ?Sized>(f: &F, t: &VecTuple, i: usize, j: usize) -> Result<Scalar> {
    check_tuple(f, t)?;
    if i == j {
        return Err(Error::RepeatedIndex(i));
    }
    let swapped = t.with_swapped(i, j)?;
    Ok(f.value(t) + f.value(&swapped))
}

fn check_run<F: Functional + ?Sized>(f: &F, field: Field, trials: usize) -> Result<()> {
    check_field(f, field)?;
    if trials == 0 {
        return Err(Error::Parse("trials must be at least 1".into()));
    }
    Ok(())
}

/// Samples `trials` random `(t, b)` pairs and reports the first instance
/// with a nonzero main-equation residual.
pub fn verify_main_equation<F: Functional + ?Sized>(
    f: &F,
    field: Field,
    trials: usize,
    seed: u64,
) -> Result<ResidualReport> {
    check_run(f, field, trials)?;
    let (n, d) = (f.arity(), f.ambient_dim());
    let witness = (0..trials as u64).find_map(|trial| {
        let mut rng = SplitMix64::for_trial(seed, trial);
        let t = rng.tuple(field, n, d);
        let b = rng.vector(field, d);
        let r = main_equation_residual(f, &t, &b).expect("sampled shapes match");
        (!r.is_zero()).then(|| Witness {
            tuple: t,
            probe: Probe::MainEquation { b },
            residual: r.into_entries(),
        })
    });
    Ok(ResidualReport {
        property: Property::MainEquation,
        witness,
        trials_run: trials,
        seed,
    })
}

/// Samples `(t, slot, w, s)` and checks additivity and homogeneity in that
/// slot.
pub fn verify_multilinearity<F: Functional + ?Sized>(
    f: &F,
    field: Field,
    trials: usize,
    seed: u64,
) -> Result<ResidualReport> {
    check_run(f, field, trials)?;
    let (n, d) = (f.arity(), f.ambient_dim());
    let witness = (0..trials as u64).find_map(|trial| {
        let mut rng = SplitMix64::for_trial(seed, trial);
        let t = rng.tuple(field, n, d);
        let slot = rng.index(n);
        let w = rng.vector(field, d);
        let s = rng.scalar(field);
        let (add, hom) = multilinearity_residuals(f, &t, slot, &w, &s).expect("sampled shapes match");
        if !add.is_zero() {
            Some(Witness {
                tuple: t,
                probe: Probe::Additivity { slot, w },
                residual: vec![add],
            })
        } else if !hom.is_zero() {
            Some(Witness {
                tuple: t,
                probe: Probe::Homogeneity { slot, s },
                residual: vec![hom],
            })
        } else {
            None
        }
    });
    Ok(ResidualReport {
        property: Property::Multilinearity,
        witness,
        trials_run: trials,
        seed,
    })
}

/// Samples `(t, i < j)` and checks the sign change under the swap. Arity 1
/// has no pairs, so no trials run.
pub fn verify_antisymmetry<F: Functional + ?Sized>(
    f: &F,
    field: Field,
    trials: usize,
    seed: u64,
) -> Result<ResidualReport> {
    check_run(f, field, trials)?;
    let (n, d) = (f.arity(), f.ambient_dim());
    if n < 2 {
        return Ok(ResidualReport {
            property: Property::Antisymmetry,
            witness: None,
            trials_run: 0,
            seed,
        });
    }
    let witness = (0..trials as u64).find_map(|trial| {
        let mut rng = SplitMix64::for_trial(seed, trial);
        let t = rng.tuple(field, n, d);
        let i = rng.index(n);
        let j = (i + 1 + rng.index(n - 1)) % n;
        let (i, j) = (i.min(j), i.max(j));
        let r = antisymmetry_residual(f, &t, i, j).expect("sampled shapes match");
        (!r.is_zero()).then(|| Witness {
            tuple: t,
            probe: Probe::Antisymmetry { i, j },
            residual: vec![r],
        })
    });
    Ok(ResidualReport {
        property: Property::Antisymmetry,
        witness,
        trials_run: trials,
        seed,
    })
}

pub fn verify<F: Functional + ?Sized>(
    f: &F,
    property: Property,
    field: Field,
    trials: usize,
    seed: u64,
) -> Result<ResidualReport> {
    match property {
        Property::MainEquation => verify_main_equation(f, field, trials, seed),
        Property::Multilinearity => verify_multilinearity(f, field, trials, seed),
        Property::Antisymmetry => verify_antisymmetry(f, field, trials, seed),
    }
}

/// Recovers `c` with `d2 = c * d1` from the first sampled tuple where `d1`
/// does not vanish, then checks the ratio on every remaining sample.
///
/// `d1` must be a genuine determinant; a `NotProportional` error means `d2`
/// is not multilinear and antisymmetric.
pub fn uniqueness_constant<A, B>(d1: &A, d2: &B, field: Field, trials: usize, seed: u64) -> Result<Scalar>
where
    A: Functional + ?Sized,
    B: Functional + ?Sized,
{
    check_run(d1, field, trials)?;
    check_field(d2, field)?;
    if d1.arity() != d2.arity() {
        return Err(Error::ArityMismatch {
            expected: d1.arity(),
            found: d2.arity(),
        });
    }
    if d1.ambient_dim() != d2.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: d1.ambient_dim(),
            found: d2.ambient_dim(),
        });
    }
    let (n, d) = (d1.arity(), d1.ambient_dim());
    let mut constant: Option<Scalar> = None;
    for trial in 0..trials as u64 {
        let t = SplitMix64::for_trial(seed, trial).tuple(field, n, d);
        let (v1, v2) = (d1.value(&t), d2.value(&t));
        match &constant {
            None if v1.is_zero() => {}
            None => constant = Some(&v2 / &v1),
            Some(c) => {
                let expected = c * &v1;
                if expected != v2 {
                    return Err(Error::NotProportional {
                        tuple: t,
                        expected,
                        found: v2,
                    });
                }
            }
        }
    }
    constant.ok_or(Error::NoNonvanishingTuple { trials })
}
