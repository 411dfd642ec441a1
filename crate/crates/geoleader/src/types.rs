//! Shared domain types: the coin parameter and finite distribution tables.

use crate::error::{Error, Result};

/// Tolerance for the "masses plus tail sum to one" invariant of
/// [`DiscreteDist`].
pub const MASS_TOL: f64 = 1e-12;

/// Success probability of the coin, constrained to the open interval (0, 1).
///
/// Every model object carries one of these; the boundary values 0 and 1 are
/// rejected at construction so downstream formulas never divide by
/// `log(1 - theta) = 0` or produce degenerate geometric laws.
#[derive(Clone, Copy, PartialEq, PartialOrd, Debug)]
pub struct Theta(f64);

impl Theta {
    /// Validates `0 < value < 1`.
    pub fn new(value: f64) -> Result<Self> {
        if value.is_finite() && value > 0.0 && value < 1.0 {
            Ok(Theta(value))
        } else {
            Err(Error::InvalidTheta(value))
        }
    }

    /// The raw probability.
    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }

    /// Survival probability `1 - theta` of a single toss.
    #[inline]
    pub fn survival(self) -> f64 {
        1.0 - self.0
    }

    /// `ln(1 - theta)`, negative.
    #[inline]
    pub fn ln_survival(self) -> f64 {
        (1.0 - self.0).ln()
    }
}

impl std::fmt::Display for Theta {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A finite probability table together with the mass it leaves out.
///
/// `support` is strictly increasing (lexicographic for pair-valued states),
/// all masses are nonnegative, and `sum(mass) + tail_bound` equals one up to
/// [`MASS_TOL`]. Truncation is always recorded in `tail_bound`, never
/// silently dropped.
#[derive(Clone, PartialEq, Debug)]
pub struct DiscreteDist<S> {
    support: Vec<S>,
    mass: Vec<f64>,
    tail_bound: f64,
}

impl<S: Ord + Copy> DiscreteDist<S> {
    /// Builds a table, checking the mass and ordering invariants.
    pub fn new(support: Vec<S>, mass: Vec<f64>, tail_bound: f64) -> Result<Self> {
        if support.len() != mass.len() {
            return Err(Error::InvalidDistribution(format!(
                "support has {} entries but mass has {}",
                support.len(),
                mass.len()
            )));
        }
        if !(tail_bound >= 0.0) {
            return Err(Error::InvalidDistribution(format!(
                "negative tail bound {tail_bound}"
            )));
        }
        if mass.iter().any(|&p| !(p >= 0.0)) {
            return Err(Error::InvalidDistribution("negative mass entry".into()));
        }
        if support.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidDistribution(
                "support not strictly increasing".into(),
            ));
        }
        let total = crate::numerics::kahan_sum(mass.iter().copied()) + tail_bound;
        if (total - 1.0).abs() > MASS_TOL {
            return Err(Error::InvalidDistribution(format!(
                "masses plus tail sum to {total}, expected 1"
            )));
        }
        Ok(DiscreteDist {
            support,
            mass,
            tail_bound,
        })
    }

    /// States carrying positive recorded mass.
    pub fn support(&self) -> &[S] {
        &self.support
    }

    /// Masses aligned with [`Self::support`].
    pub fn mass(&self) -> &[f64] {
        &self.mass
    }

    /// Probability mass outside the recorded support.
    pub fn tail_bound(&self) -> f64 {
        self.tail_bound
    }

    /// Sum of recorded masses.
    pub fn total_mass(&self) -> f64 {
        crate::numerics::kahan_sum(self.mass.iter().copied())
    }

    /// Mass at a single state (zero if absent from the support).
    pub fn mass_at(&self, state: &S) -> f64 {
        match self.support.binary_search(state) {
            Ok(idx) => self.mass[idx],
            Err(_) => 0.0,
        }
    }

    /// `(state, mass)` pairs in support order.
    pub fn iter(&self) -> impl Iterator<Item = (S, f64)> + '_ {
        self.support.iter().copied().zip(self.mass.iter().copied())
    }

    /// Number of recorded states.
    pub fn len(&self) -> usize {
        self.support.len()
    }

    /// True when no state carries recorded mass.
    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    /// Upper bound on the total variation distance to `other`.
    ///
    /// Computes half the l1 difference over the union of supports plus half
    /// of both tail bounds, which dominates the true distance whatever the
    /// unrecorded tails look like.
    pub fn tv_distance_bound(&self, other: &Self) -> f64 {
        let mut acc = crate::numerics::KahanSum::new();
        let (mut a, mut b) = (0usize, 0usize);
        while a < self.len() || b < other.len() {
            if b >= other.len()
                || (a < self.len() && self.support[a] < other.support[b])
            {
                acc.add(self.mass[a]);
                a += 1;
            } else if a >= self.len() || other.support[b] < self.support[a] {
                acc.add(other.mass[b]);
                b += 1;
            } else {
                acc.add((self.mass[a] - other.mass[b]).abs());
                a += 1;
                b += 1;
            }
        }
        0.5 * (acc.value() + self.tail_bound + other.tail_bound)
    }

    /// Maps the support through `f`, keeping masses; `f` must be strictly
    /// monotone so ordering is preserved.
    pub fn map_support<T: Ord + Copy>(&self, f: impl Fn(S) -> T) -> Result<DiscreteDist<T>> {
        DiscreteDist::new(
            self.support.iter().map(|&s| f(s)).collect(),
            self.mass.clone(),
            self.tail_bound,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theta_rejects_boundaries() {
        assert!(Theta::new(0.0).is_err());
        assert!(Theta::new(1.0).is_err());
        assert!(Theta::new(-0.2).is_err());
        assert!(Theta::new(f64::NAN).is_err());
        assert!(Theta::new(0.5).is_ok());
        assert_eq!(Theta::new(0.25).unwrap().survival(), 0.75);
    }

    #[test]
    fn dist_invariants() {
        let d = DiscreteDist::new(vec![1u32, 2, 5], vec![0.25, 0.5, 0.125], 0.125).unwrap();
        assert_eq!(d.mass_at(&2), 0.5);
        assert_eq!(d.mass_at(&3), 0.0);
        assert!((d.total_mass() - 0.875).abs() < 1e-15);

        assert!(DiscreteDist::new(vec![2u32, 1], vec![0.5, 0.5], 0.0).is_err());
        assert!(DiscreteDist::new(vec![1u32], vec![0.8], 0.0).is_err());
        assert!(DiscreteDist::new(vec![1u32], vec![-0.1], 1.1).is_err());
    }

    #[test]
    fn tv_bound_symmetric() {
        let d1 = DiscreteDist::new(vec![1u32, 2], vec![0.5, 0.5], 0.0).unwrap();
        let d2 = DiscreteDist::new(vec![2u32, 3], vec![0.25, 0.75], 0.0).unwrap();
        let tv = d1.tv_distance_bound(&d2);
        assert!((tv - d2.tv_distance_bound(&d1)).abs() < 1e-15);
        assert!((tv - 0.75).abs() < 1e-15);
    }
}
