//! Finite-model checks of the labelling `μ^s` of tempered representations by
//! points of the extended quotient.
//!
//! Representations are opaque here: a [`ReprLabel`] `(orbit, r)` stands for
//! the `r`-th irreducible constituent of the representation induced from the
//! orbit. Only the combinatorics (orders, fibre sizes, bijectivity) is
//! modelled.

use std::collections::{BTreeMap, BTreeSet};

use crate::arith::{divisors, factorize, is_prime, RationalAngle};
use crate::error::{require_positive, Error, Result};
use crate::quotient::{
    fibre_cardinality, isotropy, membership, orbit_representative, project, rational_lattice,
    ExtQuotPoint, ProjectivePoint, ShiftElement,
};

/// `N = m·n` with Levi subgroup `GL(m)^n` in `GL(N)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BernsteinPoint {
    pub big_n: u64,
    pub m: u64,
    pub n: u64,
}

impl BernsteinPoint {
    pub fn new(big_n: u64, n: u64) -> Result<Self> {
        require_positive("N", big_n)?;
        require_positive("n", n)?;
        if !big_n.is_multiple_of(n) {
            return Err(Error::OutOfRange {
                what: "n (must divide N)",
                got: n,
                bound: big_n + 1,
            });
        }
        Ok(BernsteinPoint {
            big_n,
            m: big_n / n,
            n,
        })
    }
}

/// Residue characteristic `p` and residue field size `q = p^f`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LocalFieldData {
    p: u64,
    q: u64,
}

impl LocalFieldData {
    pub fn new(p: u64, q: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidField { p, q });
        }
        let mut rest = q;
        while rest > 1 && rest.is_multiple_of(p) {
            rest /= p;
        }
        if q < p || rest != 1 {
            return Err(Error::InvalidField { p, q });
        }
        Ok(LocalFieldData { p, q })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Whether the unit group `U_F` has a character of order `n`.
    ///
    /// `U_F ≅ F_q^× × U^1` with `F_q^×` cyclic of order `q - 1` and `U^1` a
    /// pro-p group with finite quotients of every `p`-power order, so the
    /// condition is that the prime-to-`p` part of `n` divides `q - 1`.
    pub fn has_character_of_order(&self, n: u64) -> bool {
        let tame: u64 = factorize(n)
            .into_iter()
            .filter(|&(l, _)| l != self.p)
            .map(|(l, e)| l.pow(e))
            .product();
        (self.q - 1).is_multiple_of(tame)
    }
}

/// Divisors `n` of `N` for which `U_F` admits a character of order `n`.
pub fn admissible_n(big_n: u64, field: &LocalFieldData) -> Result<Vec<u64>> {
    Ok(divisors(big_n)?
        .into_iter()
        .filter(|&n| field.has_character_of_order(n))
        .collect())
}

/// The constituent `i_GM(χ_t ⊗ σ : r)` over the orbit of `t`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ReprLabel {
    pub orbit_rep: ProjectivePoint,
    pub r: u64,
}

/// `μ^s(x, γ)`: writes `γ = (γ^{n/m})^r` with `m = |Γ_x|` and pairs `r` with
/// the orbit of `x`.
pub fn mu_label(x: &ExtQuotPoint) -> ReprLabel {
    let iso = isotropy(x.point());
    let step = x.point().n() / iso.order;
    let k = x.element().k();
    debug_assert_eq!(k % step, 0, "element lies in the isotropy group");
    ReprLabel {
        orbit_rep: orbit_representative(x.point()),
        r: k / step,
    }
}

/// `μ^s` on a raw pair, rejecting elements that do not fix the point.
pub fn mu_label_of(point: &ProjectivePoint, k: u64) -> Result<ReprLabel> {
    let e = ShiftElement::new(point.n(), k)?;
    Ok(mu_label(&ExtQuotPoint::new(point.clone(), e)?))
}

/// The infinitesimal character: forgets the constituent index.
pub fn inf_ch(label: &ReprLabel) -> ProjectivePoint {
    label.orbit_rep.clone()
}

/// Outcome of [`check_square`] on one finite lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareReport {
    pub n: u64,
    pub lattice_m: u64,
    pub lattice_size: u64,
    pub orbit_count: u64,
    pub ext_orbit_count: u64,
    pub label_count: u64,
    pub passed: bool,
    pub witness: Option<String>,
}

/// Checks `π^s = inf.ch ∘ μ^s`, bijectivity of `μ^s` on orbits and fibre sizes
/// over the lattice of points with angles in `(1/M)Z/Z`.
pub fn check_square(n: u64, lattice_m: u64) -> Result<SquareReport> {
    let lattice = rational_lattice(n, lattice_m)?;
    let mut witness: Option<String> = None;
    let mut fail = |msg: String| {
        if witness.is_none() {
            witness = Some(msg);
        }
    };

    // Γ-orbits of pairs (x, γ^k) are keyed by (orbit of x, k) since Γ is abelian
    let mut ext_orbits: BTreeMap<(ProjectivePoint, u64), BTreeSet<ReprLabel>> = BTreeMap::new();
    for p in &lattice {
        for k in 0..n {
            if membership(p, k).is_none() {
                continue;
            }
            let x = ExtQuotPoint::new(p.clone(), ShiftElement::new(n, k)?)?;
            let label = mu_label(&x);
            if inf_ch(&label) != project(&x) {
                fail(format!("inf.ch(μ({p}, γ^{k})) != π({p}, γ^{k})"));
            }
            ext_orbits
                .entry((orbit_representative(p), k))
                .or_default()
                .insert(label);
        }
    }

    let mut owner: BTreeMap<ReprLabel, (ProjectivePoint, u64)> = BTreeMap::new();
    let mut per_orbit: BTreeMap<ProjectivePoint, BTreeSet<u64>> = BTreeMap::new();
    let mut over: BTreeMap<&ProjectivePoint, u64> = BTreeMap::new();
    for (key, labels) in &ext_orbits {
        *over.entry(&key.0).or_default() += 1;
        if labels.len() != 1 {
            fail(format!(
                "μ is not constant on the orbit of ({}, γ^{}): {} labels",
                key.0,
                key.1,
                labels.len()
            ));
        }
        for label in labels {
            if let Some(prev) = owner.insert(label.clone(), key.clone()) {
                if &prev != key {
                    fail(format!(
                        "μ is not injective: ({}, γ^{}) and ({}, γ^{}) share label r = {}",
                        prev.0, prev.1, key.0, key.1, label.r
                    ));
                }
            }
            per_orbit
                .entry(label.orbit_rep.clone())
                .or_default()
                .insert(label.r);
        }
    }

    let orbit_reps: BTreeSet<ProjectivePoint> = lattice.iter().map(orbit_representative).collect();
    for rep in &orbit_reps {
        let fibre = fibre_cardinality(rep);
        let over = over.get(rep).copied().unwrap_or(0);
        let rs = per_orbit.get(rep).cloned().unwrap_or_default();
        if over != fibre {
            fail(format!("fibre over {rep} has {over} points, isotropy order {fibre}"));
        }
        if !rs.iter().copied().eq(0..fibre) {
            fail(format!("labels over {rep} are {rs:?}, expected 0..{fibre}"));
        }
    }

    Ok(SquareReport {
        n,
        lattice_m,
        lattice_size: lattice.len() as u64,
        orbit_count: orbit_reps.len() as u64,
        ext_orbit_count: ext_orbits.len() as u64,
        label_count: owner.len() as u64,
        passed: witness.is_none(),
        witness,
    })
}

/// The `ℓ` points of `T^ℓ/T` fixed by all of `Z/ℓZ`: progressions with
/// common difference `j/ℓ`.
pub fn elliptic_fixed_points(l: u64) -> Result<Vec<ProjectivePoint>> {
    if !is_prime(l) {
        return Err(Error::NotPrime(l));
    }
    (0..l)
        .map(|j| {
            let step = RationalAngle::new(j as i128, l);
            let raw: Vec<_> = (0..l).map(|i| step.scale(i as i128)).collect();
            ProjectivePoint::normalize(&raw)
        })
        .collect()
}
