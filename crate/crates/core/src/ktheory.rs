//! Rational K-theory ranks of `C(T^n/T) ⋊ Z/nZ`.
//!
//! The ranks are read off the cohomology of the extended quotient: `K_0 ⊗ C`
//! collects the even cohomology and `K_1 ⊗ C` the odd cohomology of every
//! component `X(n, k, ω)`. The Chern character isomorphism and the Morita
//! equivalence with the fixed summand of the reduced C*-algebra are taken as
//! given; nothing here constructs K-theory classes.

use num_bigint::BigUint;
use num_traits::Zero;

use crate::arith::is_prime;
use crate::cohomology::{betti_x, component_betti, BettiTable};
use crate::error::{Error, Result};
use crate::quotient::{enumerate_components, Component};

/// Even and odd cohomology of one component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentContribution {
    pub component: Component,
    pub h_ev: BigUint,
    pub h_odd: BigUint,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KRanks {
    pub n: u64,
    pub k0: BigUint,
    pub k1: BigUint,
    pub breakdown: Vec<ComponentContribution>,
}

impl KRanks {
    pub fn total(&self) -> BigUint {
        &self.k0 + &self.k1
    }
}

pub fn component_contribution(c: &Component) -> Result<ComponentContribution> {
    let BettiTable { betti, .. } = component_betti(c)?;
    let (h_ev, h_odd) = BettiTable { n: c.n(), betti }.even_odd();
    Ok(ComponentContribution {
        component: *c,
        h_ev,
        h_odd,
    })
}

pub fn ktheory_ranks(n: u64) -> Result<KRanks> {
    let breakdown = enumerate_components(n)?
        .iter()
        .map(component_contribution)
        .collect::<Result<Vec<_>>>()?;
    let mut k0 = BigUint::zero();
    let mut k1 = BigUint::zero();
    for row in &breakdown {
        k0 += &row.h_ev;
        k1 += &row.h_odd;
    }
    Ok(KRanks {
        n,
        k0,
        k1,
        breakdown,
    })
}

/// K-theory ranks for prime `ℓ`, checking that the extended quotient is the
/// ordinary quotient `X(ℓ)` plus `ℓ(ℓ-1)` isolated points.
pub fn prime_case_report(l: u64) -> Result<KRanks> {
    if !is_prime(l) {
        return Err(Error::NotPrime(l));
    }
    let ranks = ktheory_ranks(l)?;
    let points = ranks.breakdown.iter().filter(|r| r.component.is_point()).count() as u64;
    let ordinary: Vec<_> = ranks
        .breakdown
        .iter()
        .filter(|r| !r.component.is_point())
        .collect();
    let shape_ok = points == l * (l - 1)
        && ordinary.len() == 1
        && ordinary[0].component.is_ordinary_quotient();
    if !shape_ok {
        return Err(Error::Consistency {
            n: l,
            detail: format!(
                "expected X({l}) plus {} points, found {} points and {} other components",
                l * (l - 1),
                points,
                ordinary.len()
            ),
        });
    }
    let (ev, odd) = betti_x(l)?.even_odd();
    let expected_k0 = ev + BigUint::from(l * (l - 1));
    if ranks.k0 != expected_k0 || ranks.k1 != odd {
        return Err(Error::Consistency {
            n: l,
            detail: format!("ranks ({}, {}) disagree with X({l}) plus points", ranks.k0, ranks.k1),
        });
    }
    Ok(ranks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::RationalAngle;
    use crate::cohomology::total_dim;

    fn pair(r: &KRanks) -> (u64, u64) {
        (
            r.k0.to_string().parse().unwrap(),
            r.k1.to_string().parse().unwrap(),
        )
    }

    #[test]
    fn contribution_examples() {
        let point = Component::new(3, 1, RationalAngle::new(1, 3)).unwrap();
        let c = component_contribution(&point).unwrap();
        assert_eq!((c.h_ev, c.h_odd), (1u32.into(), 0u32.into()));

        let x3 = Component::new(3, 3, RationalAngle::ZERO).unwrap();
        let c = component_contribution(&x3).unwrap();
        assert_eq!((c.h_ev, c.h_odd), (2u32.into(), 0u32.into()));

        let x6 = Component::new(6, 6, RationalAngle::ZERO).unwrap();
        let c = component_contribution(&x6).unwrap();
        assert_eq!((c.h_ev, c.h_odd), (4u32.into(), 2u32.into()));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(pair(&ktheory_ranks(1).unwrap()), (1, 0));
        assert_eq!(pair(&ktheory_ranks(2).unwrap()), (3, 0));
        assert_eq!(pair(&ktheory_ranks(3).unwrap()), (8, 0));
        assert_eq!(pair(&ktheory_ranks(4).unwrap()), (12, 0));
        assert_eq!(pair(&ktheory_ranks(6).unwrap()), (26, 2));
        assert!(ktheory_ranks(0).is_err());
    }

    #[test]
    fn breakdown_matches_census() {
        for n in 1..=12 {
            let ranks = ktheory_ranks(n).unwrap();
            let comps: Vec<_> = ranks.breakdown.iter().map(|r| r.component).collect();
            assert_eq!(comps, enumerate_components(n).unwrap());
            let k0: BigUint = ranks.breakdown.iter().map(|r| &r.h_ev).sum();
            let k1: BigUint = ranks.breakdown.iter().map(|r| &r.h_odd).sum();
            assert_eq!((k0, k1), (ranks.k0.clone(), ranks.k1.clone()));
        }
    }

    #[test]
    fn prime_cases() {
        assert_eq!(pair(&prime_case_report(2).unwrap()), (3, 0));
        assert_eq!(pair(&prime_case_report(3).unwrap()), (8, 0));
        assert_eq!(pair(&prime_case_report(5).unwrap()), (24, 0));
        assert_eq!(prime_case_report(4), Err(Error::NotPrime(4)));
        assert_eq!(prime_case_report(1), Err(Error::NotPrime(1)));
        for l in [2u64, 3, 5, 7, 11, 13] {
            let r = prime_case_report(l).unwrap();
            assert_eq!(r.breakdown.len() as u64, 1 + l * (l - 1));
            assert_eq!(r.total(), total_dim(l).unwrap() / 2u32 + BigUint::from(l * (l - 1)));
        }
    }
}
