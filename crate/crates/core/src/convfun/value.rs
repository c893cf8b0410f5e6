//! Exact extended-real function values of the form `p + c·√r`.
//!
//! Evaluating the analytic catalog produces values in a real quadratic
//! extension of ℚ. Comparisons across different radicands are decided
//! exactly by sign analysis and (at most two) squarings, so membership
//! thresholds never touch floating point.

use std::cmp::Ordering;
use std::fmt;

use crate::polyrat::rat::Rat;

/// `rat + coef·√rad`, normalized: `rad ≥ 0`, and `coef = 0` whenever `rad`
/// is a perfect rational square (the root is folded into `rat`).
#[derive(Clone, Debug)]
pub struct QuadVal {
    rat: Rat,
    coef: Rat,
    rad: Rat,
}

impl PartialEq for QuadVal {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for QuadVal {}

impl QuadVal {
    pub fn new(rat: Rat, coef: Rat, rad: Rat) -> Self {
        assert!(!rad.is_negative(), "radicand must be nonnegative");
        if coef.is_zero() || rad.is_zero() {
            return QuadVal {
                rat,
                coef: Rat::zero(),
                rad: Rat::zero(),
            };
        }
        if let Some(root) = rad.sqrt_exact() {
            return QuadVal {
                rat: rat + coef * root,
                coef: Rat::zero(),
                rad: Rat::zero(),
            };
        }
        QuadVal { rat, coef, rad }
    }

    pub fn from_rat(r: Rat) -> Self {
        QuadVal::new(r, Rat::zero(), Rat::zero())
    }

    pub fn as_rat(&self) -> Option<&Rat> {
        if self.coef.is_zero() {
            Some(&self.rat)
        } else {
            None
        }
    }

    pub fn add_rat(&self, d: &Rat) -> QuadVal {
        QuadVal {
            rat: &self.rat + d,
            coef: self.coef.clone(),
            rad: self.rad.clone(),
        }
    }

    pub fn neg(&self) -> QuadVal {
        QuadVal {
            rat: -&self.rat,
            coef: -&self.coef,
            rad: self.rad.clone(),
        }
    }

    /// Sign of `a + b·√w` with `w ≥ 0` not a perfect square unless `b = 0`.
    fn sign_linear(a: &Rat, b: &Rat, w: &Rat) -> i32 {
        if b.is_zero() {
            return a.signum();
        }
        debug_assert!(w.is_positive());
        let sa = a.signum();
        let sb = b.signum();
        if sa == 0 {
            return sb;
        }
        if sa == sb {
            return sa;
        }
        // Opposite signs: the larger square wins. Equality would force √w
        // rational, which normalization rules out.
        match (&b.square() * w).cmp(&a.square()) {
            Ordering::Greater => sb,
            Ordering::Less => sa,
            Ordering::Equal => unreachable!("radicand is not a perfect square"),
        }
    }

}

impl PartialOrd for QuadVal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuadVal {
    fn cmp(&self, other: &Self) -> Ordering {
        let order = |s: i32| match s {
            x if x > 0 => Ordering::Greater,
            x if x < 0 => Ordering::Less,
            _ => Ordering::Equal,
        };
        let d = &self.rat - &other.rat;
        if self.coef.is_zero() && other.coef.is_zero() {
            return order(d.signum());
        }
        if other.coef.is_zero() {
            return order(Self::sign_linear(&d, &self.coef, &self.rad));
        }
        if self.coef.is_zero() {
            return order(-Self::sign_linear(&-&d, &other.coef, &other.rad));
        }
        if self.rad == other.rad {
            return order(Self::sign_linear(&d, &(&self.coef - &other.coef), &self.rad));
        }
        // d + c₁√r₁ vs c₂√r₂: settle by sign, then square once more.
        let left = Self::sign_linear(&d, &self.coef, &self.rad);
        let right = other.coef.signum();
        if left != right {
            return order(left - right);
        }
        if left == 0 {
            return Ordering::Equal;
        }
        // Same nonzero sign: compare (d + c₁√r₁)² with (c₂√r₂)², which is
        // again linear in √r₁.
        let a = &(&d.square() + &(&self.coef.square() * &self.rad))
            - &(&other.coef.square() * &other.rad);
        let b = &Rat::from_int(2) * &(&d * &self.coef);
        let sq = Self::sign_linear(&a, &b, &self.rad);
        order(left * sq)
    }
}

impl fmt::Display for QuadVal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coef.is_zero() {
            write!(f, "{}", self.rat)
        } else if self.rat.is_zero() {
            write!(f, "{}*sqrt({})", self.coef, self.rad)
        } else {
            write!(f, "{} + {}*sqrt({})", self.rat, self.coef, self.rad)
        }
    }
}

/// Value of a proper convex function: finite exact real or `+∞`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Value {
    Fin(QuadVal),
    PosInf,
}

impl Value {
    pub fn rat(r: Rat) -> Self {
        Value::Fin(QuadVal::from_rat(r))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Value::Fin(_))
    }

    pub fn as_rat(&self) -> Option<&Rat> {
        match self {
            Value::Fin(q) => q.as_rat(),
            Value::PosInf => None,
        }
    }

    pub fn finite(&self) -> Option<&QuadVal> {
        match self {
            Value::Fin(q) => Some(q),
            Value::PosInf => None,
        }
    }

    pub fn add_rat(&self, d: &Rat) -> Value {
        match self {
            Value::Fin(q) => Value::Fin(q.add_rat(d)),
            Value::PosInf => Value::PosInf,
        }
    }

    /// `|self - other| ≤ eps`, exactly; infinite values are never close.
    pub fn within(&self, other: &Value, eps: &Rat) -> bool {
        match (self, other) {
            (Value::Fin(a), Value::Fin(b)) => {
                *a <= b.add_rat(eps) && *b <= a.add_rat(eps)
            }
            _ => false,
        }
    }
}

impl PartialOrd for Value {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Value {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Value::PosInf, Value::PosInf) => Ordering::Equal,
            (Value::PosInf, _) => Ordering::Greater,
            (_, Value::PosInf) => Ordering::Less,
            (Value::Fin(a), Value::Fin(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Fin(q) => write!(f, "{q}"),
            Value::PosInf => f.write_str("+inf"),
        }
    }
}
