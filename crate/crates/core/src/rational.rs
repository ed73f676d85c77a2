//! Exact rational values used for masses, plan costs and transport distances.

use num_rational::Ratio;
use num_traits::ToPrimitive;

/// Reduced fraction with a positive denominator.
pub type ExactRational = Ratio<i64>;

/// Formats as `p/q`, keeping the denominator even when it is 1 (`0/1`, `4/1`).
pub fn fraction_string(r: &ExactRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `p/q` or a bare integer.
pub fn parse_fraction(s: &str) -> Option<ExactRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: i64 = p.trim().parse().ok()?;
            let q: i64 = q.trim().parse().ok()?;
            (q != 0).then(|| Ratio::new(p, q))
        }
        None => s.parse().ok().map(Ratio::from_integer),
    }
}

pub fn to_f64(r: &ExactRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// A cost that is exact for integer-valued kinds and a 64-bit float otherwise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CostValue {
    Exact(ExactRational),
    Approx(f64),
}

/// Relative tolerance used to compare floating-point (Euclidean) costs.
pub const APPROX_RELATIVE_TOLERANCE: f64 = 1e-12;

impl CostValue {
    pub fn as_f64(&self) -> f64 {
        match self {
            CostValue::Exact(r) => to_f64(r),
            CostValue::Approx(x) => *x,
        }
    }

    pub fn exact(&self) -> Option<ExactRational> {
        match self {
            CostValue::Exact(r) => Some(*r),
            CostValue::Approx(_) => None,
        }
    }

    /// Exact equality for exact values, relative tolerance otherwise.
    pub fn agrees_with(&self, other: &CostValue) -> bool {
        match (self, other) {
            (CostValue::Exact(a), CostValue::Exact(b)) => a == b,
            _ => approx_eq(self.as_f64(), other.as_f64()),
        }
    }

    /// `true` when `self` is strictly larger than `other` beyond tolerance.
    pub fn exceeds(&self, other: &CostValue) -> bool {
        match (self, other) {
            (CostValue::Exact(a), CostValue::Exact(b)) => a > b,
            _ => self.as_f64() > other.as_f64() && !approx_eq(self.as_f64(), other.as_f64()),
        }
    }

    /// `p/q` for exact values, shortest round-trip decimal otherwise.
    pub fn render(&self) -> String {
        match self {
            CostValue::Exact(r) => fraction_string(r),
            CostValue::Approx(x) => format!("{x}"),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            CostValue::Exact(r) => serde_json::Value::String(fraction_string(r)),
            CostValue::Approx(x) => serde_json::json!(x),
        }
    }
}

pub fn approx_eq(a: f64, b: f64) -> bool {
    (a - b).abs() <= APPROX_RELATIVE_TOLERANCE * a.abs().max(b.abs()).max(1.0)
}
