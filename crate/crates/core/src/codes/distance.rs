use std::cmp::Ordering;
use std::fmt;

use num_rational::Ratio;

/// Minimum distance of a code, or an effective-distance estimate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Distance {
    Finite(Ratio<u64>),
    /// No nonzero codewords (`k = 0`).
    Infinite,
}

impl Distance {
    pub fn finite(d: u64) -> Self {
        Distance::Finite(Ratio::from_integer(d))
    }

    /// Whether weight `w` satisfies `w >= d / 2`.
    pub fn within_reach(&self, w: u32) -> bool {
        match self {
            Distance::Finite(d) => 2 * w as u64 * d.denom() >= *d.numer(),
            Distance::Infinite => false,
        }
    }

    pub fn times(&self, r: u64) -> Self {
        match self {
            Distance::Finite(d) => Distance::Finite(d * r),
            Distance::Infinite => Distance::Infinite,
        }
    }

    pub fn as_integer(&self) -> Option<u64> {
        match self {
            Distance::Finite(d) if d.is_integer() => Some(d.to_integer()),
            _ => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Distance::Finite(d) => *d.numer() as f64 / *d.denom() as f64,
            Distance::Infinite => f64::INFINITY,
        }
    }
}

impl Ord for Distance {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Distance::Infinite, Distance::Infinite) => Ordering::Equal,
            (Distance::Infinite, _) => Ordering::Greater,
            (_, Distance::Infinite) => Ordering::Less,
            (Distance::Finite(a), Distance::Finite(b)) => a.cmp(b),
        }
    }
}

impl PartialOrd for Distance {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(d) if d.is_integer() => write!(f, "{}", d.numer()),
            Distance::Finite(d) => write!(f, "{}/{}", d.numer(), d.denom()),
            Distance::Infinite => write!(f, "inf"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn half_distance_threshold() {
        let d = Distance::finite(8);
        assert!(!d.within_reach(3));
        assert!(d.within_reach(4));
        let d = Distance::finite(7);
        assert!(!d.within_reach(3));
        assert!(d.within_reach(4));
        assert!(!Distance::Infinite.within_reach(u32::MAX));
        assert!(Distance::Infinite > Distance::finite(1000));
        assert_eq!(Distance::finite(8).times(4), Distance::finite(32));
    }
}
