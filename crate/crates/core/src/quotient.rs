//! The space `E = T^n/T` with its cyclic shift action, and the components of
//! the extended quotient `E//(Z/nZ)`.
//!
//! A point of `E` is stored in homogeneous coordinates `(z_1 : … : z_n)`
//! normalized so that the first angle is `0`. The generator `γ` of `Z/nZ`
//! moves coordinate `i` to position `i + 1`, so `(γ^k·z)_i = z_{i-k}`.
//! With this convention the fixed set of `γ^k` labelled by `ω` is cut out by
//! `z_{i+k} = ω^{-1} z_i` and satisfies `γ^k·t = ω·t`.

use std::fmt;

use crate::arith::{gcd, totient, RationalAngle};
use crate::error::{require_positive, Error, Result};

/// A point of `T^n/T` in normalized homogeneous coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjectivePoint {
    angles: Vec<RationalAngle>,
}

impl ProjectivePoint {
    /// Subtracts the first angle from every coordinate.
    pub fn normalize(raw: &[RationalAngle]) -> Result<Self> {
        let first = *raw.first().ok_or(Error::EmptyPoint)?;
        Ok(ProjectivePoint {
            angles: raw.iter().map(|&a| a - first).collect(),
        })
    }

    /// The base point `(0, …, 0)`.
    pub fn origin(n: u64) -> Result<Self> {
        require_positive("n", n)?;
        Ok(ProjectivePoint {
            angles: vec![RationalAngle::ZERO; n as usize],
        })
    }

    pub fn n(&self) -> u64 {
        self.angles.len() as u64
    }

    pub fn angles(&self) -> &[RationalAngle] {
        &self.angles
    }

    /// Coordinates shifted by `γ^k` before renormalization.
    fn shifted_raw(&self, k: u64) -> Vec<RationalAngle> {
        let n = self.angles.len();
        let k = k as usize % n;
        (0..n).map(|i| self.angles[(i + n - k) % n]).collect()
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.angles.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The element `γ^k` of `Z/nZ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ShiftElement {
    n: u64,
    k: u64,
}

impl ShiftElement {
    pub fn new(n: u64, k: u64) -> Result<Self> {
        require_positive("n", n)?;
        if k >= n {
            return Err(Error::OutOfRange {
                what: "k",
                got: k,
                bound: n,
            });
        }
        Ok(ShiftElement { n, k })
    }

    /// `γ^k` for any integer `k`, reduced mod `n`.
    pub fn reduced(n: u64, k: u64) -> Result<Self> {
        require_positive("n", n)?;
        Ok(ShiftElement { n, k: k % n })
    }

    pub fn identity(n: u64) -> Result<Self> {
        Self::new(n, 0)
    }

    pub fn n(self) -> u64 {
        self.n
    }

    pub fn k(self) -> u64 {
        self.k
    }

    pub fn compose(self, other: Self) -> Self {
        debug_assert_eq!(self.n, other.n);
        ShiftElement {
            n: self.n,
            k: (self.k + other.k) % self.n,
        }
    }

    /// Order of `γ^k` in `Z/nZ`.
    pub fn order(self) -> u64 {
        self.n / gcd(self.n, self.k)
    }
}

impl fmt::Display for ShiftElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "γ^{}", self.k)
    }
}

/// Applies `γ^k` to `p` and renormalizes.
pub fn act(e: ShiftElement, p: &ProjectivePoint) -> Result<ProjectivePoint> {
    if e.n != p.n() {
        return Err(Error::DimensionMismatch {
            expected: e.n,
            got: p.n(),
        });
    }
    ProjectivePoint::normalize(&p.shifted_raw(e.k))
}

/// The isotropy group `Γ_p`: its order `m` and generator `γ^{n/m}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Isotropy {
    pub order: u64,
    pub generator: ShiftElement,
}

pub fn isotropy(p: &ProjectivePoint) -> Isotropy {
    let n = p.n();
    let fixing: Vec<u64> = (0..n).filter(|&k| membership(p, k).is_some()).collect();
    let m = fixing.len() as u64;
    let step = n / m;
    assert!(
        n.is_multiple_of(m) && fixing.iter().copied().eq((0..m).map(|i| i * step)),
        "stabilizer of {p} is not the subgroup generated by γ^{step}"
    );
    Isotropy {
        order: m,
        generator: ShiftElement { n, k: step % n },
    }
}

/// If `γ^k` fixes `p`, the angle `ω` with `γ^k·p = ω·p` in raw coordinates;
/// this identifies the component `X(n, k, ω)` containing `(p, γ^k)`.
pub fn membership(p: &ProjectivePoint, k: u64) -> Option<RationalAngle> {
    let shifted = p.shifted_raw(k);
    let omega = shifted[0] - p.angles[0];
    shifted
        .iter()
        .zip(&p.angles)
        .all(|(&s, &a)| s - a == omega)
        .then_some(omega)
}

/// The component of the extended quotient containing `(p, γ^k)`, `1 <= k <= n`.
pub fn component_of(p: &ProjectivePoint, k: u64) -> Option<Component> {
    let n = p.n();
    if k == 0 || k > n {
        return None;
    }
    membership(p, k).map(|omega| Component { n, k, omega })
}

/// One component `X(n, k, ω)` of the extended quotient.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Component {
    n: u64,
    k: u64,
    omega: RationalAngle,
}

impl Component {
    /// Requires `1 <= k <= n` and `ω^d = 1` with `d = n/(n,k)`.
    pub fn new(n: u64, k: u64, omega: RationalAngle) -> Result<Self> {
        require_positive("n", n)?;
        if k == 0 || k > n {
            return Err(Error::OutOfRange {
                what: "k",
                got: k,
                bound: n + 1,
            });
        }
        let d = n / gcd(n, k);
        if !omega.is_root_of(d) {
            return Err(Error::InvalidOmega {
                omega: omega.to_string(),
                d,
            });
        }
        Ok(Component { n, k, omega })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn omega(&self) -> RationalAngle {
        self.omega
    }

    /// `gcd(n, k)`: the number of free coordinates of the fixed set.
    pub fn g(&self) -> u64 {
        gcd(self.n, self.k)
    }

    /// `n/(n,k)`: the cycle length of `γ^k`.
    pub fn d(&self) -> u64 {
        self.n / self.g()
    }

    pub fn dim(&self) -> u64 {
        self.g() - 1
    }

    pub fn is_point(&self) -> bool {
        self.g() == 1
    }

    /// `X(n, n, 1)`, the ordinary quotient `X(n)`.
    pub fn is_ordinary_quotient(&self) -> bool {
        self.k == self.n
    }

    pub fn element(&self) -> ShiftElement {
        ShiftElement {
            n: self.n,
            k: self.k % self.n,
        }
    }

    pub fn fixed_set(&self) -> FixedSet {
        FixedSet::new(*self)
    }

    /// Whether `(p, γ^k)` lies over this component.
    pub fn contains(&self, p: &ProjectivePoint) -> bool {
        p.n() == self.n && membership(p, self.k) == Some(self.omega)
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "X({}, {}, {})", self.n, self.k, self.omega)
    }
}

/// Every component of `(T^n/T)//(Z/nZ)`, ordered by `(k, ω)`.
pub fn enumerate_components(n: u64) -> Result<Vec<Component>> {
    require_positive("n", n)?;
    let mut out = Vec::new();
    for k in 1..=n {
        let d = n / gcd(n, k);
        out.extend((0..d).map(|j| Component {
            n,
            k,
            omega: RationalAngle::root_of_unity(j, d),
        }));
    }
    Ok(out)
}

/// `n·φ(n)`: the number of zero-dimensional components.
pub fn isolated_point_count(n: u64) -> Result<u64> {
    Ok(n * totient(n)?)
}

/// Coordinate `i` of a fixed-set point equals `twist + z[free]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CoordinateRule {
    pub free: usize,
    pub twist: RationalAngle,
}

/// The fixed set `Y(n, k, ω)` described by its free coordinates and the
/// relations `z_{i+k} = ω^{-1} z_i`. Indices are 0-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedSet {
    pub component: Component,
    pub free_indices: Vec<usize>,
    pub rules: Vec<CoordinateRule>,
}

impl FixedSet {
    fn new(c: Component) -> Self {
        let (n, k, g, d) = (c.n as usize, c.k as usize, c.g() as usize, c.d());
        let rules = (0..n)
            .map(|i| {
                let free = i % g;
                // i = free + s·k (mod n) for a unique s mod d
                let s = (0..d)
                    .find(|&s| (free + s as usize * k) % n == i)
                    .expect("residue class mod g is a coset of <k>");
                CoordinateRule {
                    free,
                    twist: c.omega.scale(-(s as i128)),
                }
            })
            .collect();
        FixedSet {
            component: c,
            free_indices: (0..g).collect(),
            rules,
        }
    }

    /// The point with the given free coordinates.
    pub fn instantiate(&self, free: &[RationalAngle]) -> Result<ProjectivePoint> {
        if free.len() != self.free_indices.len() {
            return Err(Error::DimensionMismatch {
                expected: self.free_indices.len() as u64,
                got: free.len() as u64,
            });
        }
        let raw: Vec<_> = self.rules.iter().map(|r| free[r.free] + r.twist).collect();
        ProjectivePoint::normalize(&raw)
    }

    /// `t(ω; 1, …, 1)`: the translation carrying `Y(n, k, 1)` onto this set.
    pub fn base_translation(&self) -> ProjectivePoint {
        self.instantiate(&vec![RationalAngle::ZERO; self.free_indices.len()])
            .expect("free coordinate count matches")
    }

    /// Translates a point of `Y(n, k, ω)` into `Y(n, k, 1)`.
    pub fn translate_to_trivial(&self, p: &ProjectivePoint) -> Result<ProjectivePoint> {
        let t = self.base_translation();
        if p.n() != t.n() {
            return Err(Error::DimensionMismatch {
                expected: t.n(),
                got: p.n(),
            });
        }
        let raw: Vec<_> = p.angles.iter().zip(&t.angles).map(|(&a, &b)| a - b).collect();
        ProjectivePoint::normalize(&raw)
    }
}

pub fn fixed_set_descriptor(n: u64, k: u64, omega: RationalAngle) -> Result<FixedSet> {
    Ok(Component::new(n, k, omega)?.fixed_set())
}

/// A pair `(x, γ)` with `γ·x = x`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtQuotPoint {
    point: ProjectivePoint,
    element: ShiftElement,
}

impl ExtQuotPoint {
    pub fn new(point: ProjectivePoint, element: ShiftElement) -> Result<Self> {
        if element.n != point.n() {
            return Err(Error::DimensionMismatch {
                expected: point.n(),
                got: element.n,
            });
        }
        if membership(&point, element.k).is_none() {
            return Err(Error::NotFixed {
                k: element.k,
                point: point.to_string(),
            });
        }
        Ok(ExtQuotPoint { point, element })
    }

    pub fn point(&self) -> &ProjectivePoint {
        &self.point
    }

    pub fn element(&self) -> ShiftElement {
        self.element
    }

    /// The component of the extended quotient this pair lies over.
    pub fn component(&self) -> Component {
        let k = if self.element.k == 0 {
            self.element.n
        } else {
            self.element.k
        };
        component_of(&self.point, k).expect("element fixes point")
    }

    /// `h·(x, γ) = (h·x, γ)`; conjugation is trivial since `Γ` is abelian.
    pub fn translate(&self, h: ShiftElement) -> Result<Self> {
        Ok(ExtQuotPoint {
            point: act(h, &self.point)?,
            element: self.element,
        })
    }
}

/// Lexicographically least point of the `Γ`-orbit of `p`.
pub fn orbit_representative(p: &ProjectivePoint) -> ProjectivePoint {
    (0..p.n())
        .map(|k| ProjectivePoint::normalize(&p.shifted_raw(k)).expect("nonempty"))
        .min()
        .expect("n >= 1")
}

/// The standard projection `(x, γ) ↦ Γx`, as a canonical orbit representative.
pub fn project(x: &ExtQuotPoint) -> ProjectivePoint {
    orbit_representative(&x.point)
}

/// Size of the fibre of the standard projection over the orbit of `p`.
pub fn fibre_cardinality(p: &ProjectivePoint) -> u64 {
    isotropy(p).order
}

/// All normalized points whose angles have denominator dividing `m`, in
/// lexicographic order. There are `m^{n-1}` of them.
pub fn rational_lattice(n: u64, m: u64) -> Result<Vec<ProjectivePoint>> {
    require_positive("n", n)?;
    require_positive("M", m)?;
    let free = (n - 1) as usize;
    let total = m
        .checked_pow(free as u32)
        .ok_or(Error::OutOfRange {
            what: "lattice size",
            got: m,
            bound: u64::MAX,
        })?;
    let mut digits = vec![0u64; free];
    let mut out = Vec::with_capacity(total as usize);
    for _ in 0..total {
        let mut angles = Vec::with_capacity(n as usize);
        angles.push(RationalAngle::ZERO);
        angles.extend(digits.iter().map(|&j| RationalAngle::new(j as i128, m)));
        out.push(ProjectivePoint { angles });
        for digit in digits.iter_mut().rev() {
            *digit += 1;
            if *digit < m {
                break;
            }
            *digit = 0;
        }
    }
    Ok(out)
}
