//! The degree rig: values of the form c·L^d with c in N ∪ {∞} and d a
//! natural "limit-degree exponent". Addition absorbs lower-order terms
//! (leading term wins); multiplication multiplies coefficients and adds
//! exponents. Totally ordered by exponent first, then coefficient.

use std::cmp::Ordering;
use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Nat {
    Fin(u64),
    Inf,
}

impl Nat {
    pub fn add(self, other: Nat) -> Nat {
        match (self, other) {
            (Nat::Fin(a), Nat::Fin(b)) => Nat::Fin(a + b),
            _ => Nat::Inf,
        }
    }

    pub fn mul(self, other: Nat) -> Nat {
        match (self, other) {
            (Nat::Fin(0), _) | (_, Nat::Fin(0)) => Nat::Fin(0),
            (Nat::Fin(a), Nat::Fin(b)) => Nat::Fin(a * b),
            _ => Nat::Inf,
        }
    }

    pub fn is_zero(self) -> bool {
        self == Nat::Fin(0)
    }
}

impl PartialOrd for Nat {
    fn partial_cmp(&self, other: &Nat) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Nat {
    fn cmp(&self, other: &Nat) -> Ordering {
        match (self, other) {
            (Nat::Fin(a), Nat::Fin(b)) => a.cmp(b),
            (Nat::Fin(_), Nat::Inf) => Ordering::Less,
            (Nat::Inf, Nat::Fin(_)) => Ordering::Greater,
            (Nat::Inf, Nat::Inf) => Ordering::Equal,
        }
    }
}

impl fmt::Display for Nat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Nat::Fin(n) => write!(f, "{}", n),
            Nat::Inf => write!(f, "inf"),
        }
    }
}

/// A canonical rig element `coeff * L^ldeg`. Zero is represented uniquely
/// as coeff = 0, ldeg = 0.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub struct SigmaDegree {
    pub coeff: Nat,
    pub ldeg: u64,
}

impl SigmaDegree {
    pub fn new(coeff: Nat, ldeg: u64) -> SigmaDegree {
        if coeff.is_zero() {
            SigmaDegree { coeff: Nat::Fin(0), ldeg: 0 }
        } else {
            SigmaDegree { coeff, ldeg }
        }
    }

    pub fn zero() -> SigmaDegree {
        SigmaDegree::new(Nat::Fin(0), 0)
    }

    pub fn one() -> SigmaDegree {
        SigmaDegree::new(Nat::Fin(1), 0)
    }

    pub fn finite(n: u64) -> SigmaDegree {
        SigmaDegree::new(Nat::Fin(n), 0)
    }

    pub fn infinite() -> SigmaDegree {
        SigmaDegree::new(Nat::Inf, 0)
    }

    /// L^d with unit coefficient.
    pub fn l_power(d: u64) -> SigmaDegree {
        SigmaDegree::new(Nat::Fin(1), d)
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    /// Leading-term addition: the higher L-power absorbs the lower; equal
    /// powers add coefficients.
    pub fn add(&self, other: &SigmaDegree) -> SigmaDegree {
        if self.is_zero() {
            return *other;
        }
        if other.is_zero() {
            return *self;
        }
        match self.ldeg.cmp(&other.ldeg) {
            Ordering::Greater => *self,
            Ordering::Less => *other,
            Ordering::Equal => SigmaDegree::new(self.coeff.add(other.coeff), self.ldeg),
        }
    }

    pub fn mul(&self, other: &SigmaDegree) -> SigmaDegree {
        SigmaDegree::new(self.coeff.mul(other.coeff), self.ldeg + other.ldeg)
    }

    /// Total order: compare L-exponents, then coefficients; zero is least.
    pub fn cmp_order(&self, other: &SigmaDegree) -> Ordering {
        if self.is_zero() || other.is_zero() {
            return match (self.is_zero(), other.is_zero()) {
                (true, true) => Ordering::Equal,
                (true, false) => Ordering::Less,
                (false, true) => Ordering::Greater,
                _ => unreachable!(),
            };
        }
        match self.ldeg.cmp(&other.ldeg) {
            Ordering::Equal => self.coeff.cmp(&other.coeff),
            o => o,
        }
    }
}

impl fmt::Display for SigmaDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.ldeg {
            0 => write!(f, "{}", self.coeff),
            1 => write!(f, "{}*L", self.coeff),
            d => write!(f, "{}*L^{}", self.coeff, d),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn absorption() {
        let a = SigmaDegree::new(Nat::Fin(3), 2);
        let b = SigmaDegree::new(Nat::Fin(100), 1);
        assert_eq!(a.add(&b), a);
        assert_eq!(b.add(&a), a);
        let c = SigmaDegree::new(Nat::Fin(4), 2);
        assert_eq!(a.add(&c), SigmaDegree::new(Nat::Fin(7), 2));
    }

    #[test]
    fn multiplication() {
        let a = SigmaDegree::new(Nat::Fin(2), 1);
        let b = SigmaDegree::new(Nat::Fin(3), 2);
        assert_eq!(a.mul(&b), SigmaDegree::new(Nat::Fin(6), 3));
        assert_eq!(a.mul(&SigmaDegree::zero()), SigmaDegree::zero());
        assert_eq!(a.mul(&SigmaDegree::infinite()), SigmaDegree::new(Nat::Inf, 1));
    }

    #[test]
    fn canonical_zero() {
        let z = SigmaDegree::new(Nat::Fin(0), 7);
        assert_eq!(z, SigmaDegree::zero());
        assert_eq!(z.ldeg, 0);
    }

    #[test]
    fn total_order() {
        let a = SigmaDegree::finite(5);
        let b = SigmaDegree::l_power(1);
        let c = SigmaDegree::infinite();
        // 0 < 5 < inf < L < ...
        assert_eq!(SigmaDegree::zero().cmp_order(&a), Ordering::Less);
        assert_eq!(a.cmp_order(&c), Ordering::Less);
        assert_eq!(c.cmp_order(&b), Ordering::Less);
        assert_eq!(b.cmp_order(&b), Ordering::Equal);
    }

    #[test]
    fn distributes_on_same_degree() {
        // (2 + 3) * L = 2L + 3L
        let two = SigmaDegree::finite(2);
        let three = SigmaDegree::finite(3);
        let l = SigmaDegree::l_power(1);
        assert_eq!(two.add(&three).mul(&l), two.mul(&l).add(&three.mul(&l)));
    }
}
