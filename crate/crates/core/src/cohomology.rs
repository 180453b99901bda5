//! Cyclic invariants of `H^•(T^n; C) = ∧V` and Betti numbers of the
//! orbifolds `X(n)` and `X(n, k, ω)`.
//!
//! Two routes are kept apart on purpose:
//!
//! * the formula route, which averages the closed-form exterior character
//!   `det(1 + λ·γ^r) = (1 + (-1)^{d+1} λ^d)^{n/d}` and peels off Betti numbers
//!   with the Künneth recursion `a_j = b_j + b_{j-1}`;
//! * the oracle routes, which either count fixed wedge monomials with signs
//!   or compute exterior characters of explicit integer matrices acting on
//!   degree-one cohomology.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{binomial, gcd, odd_divisors, totient, RationalAngle};
use crate::error::{require_positive, Error, Result};
use crate::quotient::Component;

/// Largest `n` for which the subset-scan oracle runs unless told otherwise.
pub const DEFAULT_ORACLE_BOUND: u64 = 16;

/// Hard ceiling for the subset-scan oracle (subsets are `u64` bitmasks).
pub const MAX_ORACLE_BOUND: u64 = 63;

/// Values `χ_{∧^j ρ}(γ^r)` for `j = 0..=n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterRow {
    pub n: u64,
    pub r: u64,
    pub values: Vec<BigInt>,
}

/// Dimensions `a_j` of the `Z/nZ`-invariants in `H^j(T^n; C)`, `j = 0..=n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedDims {
    pub n: u64,
    pub dims: Vec<BigUint>,
}

impl GradedDims {
    pub fn total(&self) -> BigUint {
        self.dims.iter().sum()
    }

    /// `(Σ_{j even} a_j, Σ_{j odd} a_j)`.
    pub fn even_odd(&self) -> (BigUint, BigUint) {
        split_even_odd(&self.dims)
    }

    pub fn alternating_sum(&self) -> BigInt {
        self.dims
            .iter()
            .enumerate()
            .map(|(j, a)| {
                let a = BigInt::from(a.clone());
                if j % 2 == 0 {
                    a
                } else {
                    -a
                }
            })
            .sum()
    }
}

/// Betti numbers `b_0..b_{len-1}` of an orbifold quotient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    pub n: u64,
    pub betti: Vec<BigUint>,
}

impl BettiTable {
    pub fn total(&self) -> BigUint {
        self.betti.iter().sum()
    }

    /// `(dim H^ev, dim H^odd)`.
    pub fn even_odd(&self) -> (BigUint, BigUint) {
        split_even_odd(&self.betti)
    }
}

fn split_even_odd(values: &[BigUint]) -> (BigUint, BigUint) {
    let mut even = BigUint::zero();
    let mut odd = BigUint::zero();
    for (j, v) in values.iter().enumerate() {
        if j % 2 == 0 {
            even += v;
        } else {
            odd += v;
        }
    }
    (even, odd)
}

/// Exterior character of `γ^r` acting on `∧C^n` by permuting coordinates.
pub fn character_row(n: u64, r: u64) -> Result<CharacterRow> {
    require_positive("n", n)?;
    if r >= n {
        return Err(Error::OutOfRange {
            what: "r",
            got: r,
            bound: n,
        });
    }
    let d = n / gcd(n, r);
    let cycles = n / d;
    let values = (0..=n)
        .map(|j| {
            if j % d != 0 {
                return BigInt::zero();
            }
            let c = BigInt::from(binomial(cycles, j / d));
            if d.is_multiple_of(2) && (j / d) % 2 == 1 {
                -c
            } else {
                c
            }
        })
        .collect();
    Ok(CharacterRow { n, r, values })
}

fn exact_average(n: u64, degree: usize, sum: BigInt, divisor: u64) -> Result<BigUint> {
    let (q, rem) = sum.div_rem(&BigInt::from(divisor));
    if !rem.is_zero() || q.is_negative() {
        return Err(Error::Integrality { n, degree });
    }
    Ok(q.to_biguint().expect("nonnegative"))
}

/// Averages the character rows over `Z/nZ`.
pub fn graded_invariants(n: u64) -> Result<GradedDims> {
    require_positive("n", n)?;
    let mut sums = vec![BigInt::zero(); n as usize + 1];
    for r in 0..n {
        for (s, v) in sums.iter_mut().zip(character_row(n, r)?.values) {
            *s += v;
        }
    }
    let dims = sums
        .into_iter()
        .enumerate()
        .map(|(j, s)| exact_average(n, j, s, n))
        .collect::<Result<_>>()?;
    Ok(GradedDims { n, dims })
}

/// Sign of the permutation `s ↦ s + r (mod n)` on the sorted elements of an
/// invariant subset `mask`.
fn shift_sign(mask: u64, n: u32, r: u32) -> i64 {
    let elems: Vec<u32> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
    let position = |x: u32| elems.binary_search(&x).expect("subset is shift-invariant");
    let mut seen = vec![false; elems.len()];
    let mut sign = 1i64;
    for start in 0..elems.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = position((elems[i] + r) % n);
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

fn rotate(mask: u64, n: u32, r: u32) -> u64 {
    if r == 0 {
        return mask;
    }
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    ((mask << r) | (mask >> (n - r))) & full
}

/// Signed count of shift-invariant wedge monomials, averaged over `Z/nZ`.
///
/// Scans all `2^n` subsets for each shift, so it refuses `n > bound`.
pub fn graded_invariants_oracle(n: u64, bound: u64) -> Result<GradedDims> {
    require_positive("n", n)?;
    let bound = bound.min(MAX_ORACLE_BOUND);
    if n > bound {
        return Err(Error::OracleBoundExceeded { n, bound });
    }
    let bits = n as u32;
    let mut sums = vec![0i64; n as usize + 1];
    for r in 0..bits {
        for mask in 0..(1u64 << bits) {
            if rotate(mask, bits, r) == mask {
                sums[mask.count_ones() as usize] += shift_sign(mask, bits, r);
            }
        }
    }
    let dims = sums
        .into_iter()
        .enumerate()
        .map(|(j, s)| exact_average(n, j, BigInt::from(s), n))
        .collect::<Result<_>>()?;
    Ok(GradedDims { n, dims })
}

/// Betti numbers of `X(n) = (T^n/T)/(Z/nZ)` from the Künneth recursion
/// `a_j = b_j + b_{j-1}`, closed by `a_n = b_{n-1}`.
pub fn betti_x(n: u64) -> Result<BettiTable> {
    let a = graded_invariants(n)?;
    betti_from_invariants(&a)
}

fn betti_from_invariants(a: &GradedDims) -> Result<BettiTable> {
    let n = a.n;
    let len = n as usize;
    let mut betti: Vec<BigInt> = Vec::with_capacity(len);
    betti.push(BigInt::from(a.dims[0].clone()));
    for j in 1..len {
        let b = BigInt::from(a.dims[j].clone()) - &betti[j - 1];
        if b.is_negative() {
            return Err(Error::Consistency {
                n,
                detail: format!("negative Betti number b_{j} = {b}"),
            });
        }
        betti.push(b);
    }
    if betti[0] != BigInt::one() {
        return Err(Error::Consistency {
            n,
            detail: format!("b_0 = {}", betti[0]),
        });
    }
    if BigInt::from(a.dims[len].clone()) != betti[len - 1] {
        return Err(Error::Consistency {
            n,
            detail: format!("a_n = {} but b_(n-1) = {}", a.dims[len], betti[len - 1]),
        });
    }
    Ok(BettiTable {
        n,
        betti: betti
            .into_iter()
            .map(|b| b.to_biguint().expect("checked nonnegative"))
            .collect(),
    })
}

/// `g(n) = (1/n) Σ_{d | n, d odd} φ(d) 2^{n/d}`.
pub fn g_closed_form(n: u64) -> Result<BigUint> {
    require_positive("n", n)?;
    let mut sum = BigUint::zero();
    for d in odd_divisors(n)? {
        sum += BigUint::from(totient(d)?) << (n / d) as usize;
    }
    let (q, rem) = sum.div_rem(&BigUint::from(n));
    if !rem.is_zero() {
        return Err(Error::Integrality { n, degree: 0 });
    }
    Ok(q)
}

/// `g(n)`, checked against the averaged invariants (`Σ a_j`) and against the
/// Betti numbers of `X(n)` (`Σ b_j = g(n)/2`).
pub fn total_dim(n: u64) -> Result<BigUint> {
    let g = g_closed_form(n)?;
    let a = graded_invariants(n)?;
    if a.total() != g {
        return Err(Error::Consistency {
            n,
            detail: format!("closed form g = {g} but Σ a_j = {}", a.total()),
        });
    }
    let b = betti_from_invariants(&a)?;
    if b.total() * 2u32 != g {
        return Err(Error::Consistency {
            n,
            detail: format!("g = {g} but Σ b_j = {}", b.total()),
        });
    }
    Ok(g)
}

/// `g(n)/2` for `n = 1..=limit`: total Betti numbers of `X(n)`.
pub fn cohomology_sequence(limit: u64) -> Result<Vec<BigUint>> {
    require_positive("limit", limit)?;
    (1..=limit).map(|n| Ok(total_dim(n)? / 2u32)).collect()
}

type Matrix = Vec<Vec<BigInt>>;

fn identity(m: usize) -> Matrix {
    (0..m)
        .map(|i| (0..m).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

fn mul(a: &Matrix, b: &Matrix) -> Matrix {
    let m = a.len();
    (0..m)
        .map(|i| {
            (0..m)
                .map(|j| (0..m).map(|l| &a[i][l] * &b[l][j]).sum())
                .collect()
        })
        .collect()
}

/// `e_j(A) = tr(∧^j A)` for `j = 0..=m`, via Faddeev–LeVerrier.
fn exterior_traces(a: &Matrix) -> Vec<BigInt> {
    let m = a.len();
    // char[i] = coefficient of x^i in det(xI - A)
    let mut char = vec![BigInt::zero(); m + 1];
    char[m] = BigInt::one();
    let mut prev = vec![vec![BigInt::zero(); m]; m];
    for k in 1..=m {
        let mut next = mul(a, &prev);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &char[m - k + 1];
        }
        let am = mul(a, &next);
        let trace: BigInt = (0..m).map(|i| am[i][i].clone()).sum();
        let (q, rem) = trace.div_rem(&BigInt::from(k));
        assert!(rem.is_zero(), "Faddeev–LeVerrier division must be exact");
        char[m - k] = -q;
        prev = next;
    }
    (0..=m)
        .map(|j| {
            let c = char[m - j].clone();
            if j % 2 == 0 {
                c
            } else {
                -c
            }
        })
        .collect()
}

/// Invariant dimensions of `∧(Z^g / Z·(1, …, 1)) ⊗ C` under the cyclic
/// group generated by the permutation `sigma` of the `g` coordinates.
fn quotient_lattice_invariants(sigma: &[usize]) -> Result<Vec<BigUint>> {
    let g = sigma.len();
    let m = g - 1;
    // e_{g-1} ≡ -(e_0 + … + e_{g-2}) in the quotient
    let mut a = vec![vec![BigInt::zero(); m]; m];
    for (i, &target) in sigma.iter().take(m).enumerate() {
        if target < m {
            a[target][i] = BigInt::one();
        } else {
            for row in a.iter_mut() {
                row[i] = -BigInt::one();
            }
        }
    }
    let id = identity(m);
    let mut power = id.clone();
    let mut sums = vec![BigInt::zero(); m + 1];
    let mut order = 0u64;
    loop {
        for (s, v) in sums.iter_mut().zip(exterior_traces(&power)) {
            *s += v;
        }
        order += 1;
        power = mul(&a, &power);
        if power == id {
            break;
        }
    }
    sums.into_iter()
        .enumerate()
        .map(|(j, s)| exact_average(g as u64, j, s, order))
        .collect()
}

/// Invariant dimensions of `∧(C^g / C·(1, …, 1))` under the cyclic shift,
/// computed from integer matrices on the quotient lattice.
pub fn reduced_invariants(g: u64) -> Result<Vec<BigUint>> {
    require_positive("g", g)?;
    let g = g as usize;
    let shift: Vec<usize> = (0..g).map(|i| (i + 1) % g).collect();
    quotient_lattice_invariants(&shift)
}

/// Betti numbers of `X(n, k, ω)`: those of `X(g)` with `g = (n, k)`.
///
/// `Y(n, k, ω)` is a translate of `T^g/T`, and `Γ` acts on it by a cyclic
/// shift of the free coordinates followed by a translation; translations act
/// trivially on cohomology.
pub fn component_betti(c: &Component) -> Result<BettiTable> {
    let b = betti_x(c.g())?;
    Ok(BettiTable {
        n: c.n(),
        betti: b.betti,
    })
}

/// The permutation of free coordinates induced by `γ` on `Y(n, k, ω)`,
/// together with the translation part.
pub fn induced_shift(c: &Component) -> Vec<(usize, RationalAngle)> {
    let y = c.fixed_set();
    let n = c.n() as usize;
    // (γp)_j = p_{j-1} = free[rule(j-1).free] + rule(j-1).twist
    y.free_indices
        .iter()
        .map(|&j| {
            let rule = y.rules[(j + n - 1) % n];
            (rule.free, rule.twist)
        })
        .collect()
}

/// Betti numbers of `X(n, k, ω)` from the action induced on the degree-one
/// cohomology of `Y(n, k, ω)`, read off the fixed-set descriptor.
pub fn component_betti_oracle(c: &Component) -> Result<Vec<BigUint>> {
    let images = induced_shift(c);
    let g = images.len();
    // free'_j = free[images[j]]: coordinate images[j] moves to j
    let mut sigma = vec![0usize; g];
    for (j, &(src, _)) in images.iter().enumerate() {
        sigma[src] = j;
    }
    quotient_lattice_invariants(&sigma)
}

/// Converts a small table to machine integers, for display and tests.
pub fn to_u64s(values: &[BigUint]) -> Option<Vec<u64>> {
    values.iter().map(|v| v.to_u64()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quotient::enumerate_components;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn nats(v: &[u64]) -> Vec<BigUint> {
        v.iter().map(|&x| BigUint::from(x)).collect()
    }

    #[test]
    fn character_row_examples() {
        assert_eq!(character_row(4, 0).unwrap().values, ints(&[1, 4, 6, 4, 1]));
        assert_eq!(character_row(4, 2).unwrap().values, ints(&[1, 0, -2, 0, 1]));
        assert_eq!(character_row(3, 1).unwrap().values, ints(&[1, 0, 0, 1]));
        assert!(character_row(4, 4).is_err());
        assert!(character_row(0, 0).is_err());
    }

    #[test]
    fn character_row_sums() {
        // at λ = 1 the row sums to 2^{n/d} for odd d and 0 for even d
        for n in 1..=20u64 {
            for r in 0..n {
                let d = n / gcd(n, r);
                let sum: BigInt = character_row(n, r).unwrap().values.into_iter().sum();
                let expected = if d % 2 == 1 {
                    BigInt::one() << (n / d) as usize
                } else {
                    BigInt::zero()
                };
                assert_eq!(sum, expected, "n = {n}, r = {r}");
            }
        }
    }

    #[test]
    fn graded_invariant_examples() {
        assert_eq!(graded_invariants(2).unwrap().dims, nats(&[1, 1, 0]));
        assert_eq!(graded_invariants(4).unwrap().dims, nats(&[1, 1, 1, 1, 0]));
        assert_eq!(graded_invariants(1).unwrap().dims, nats(&[1, 1]));
        assert_eq!(graded_invariants(6).unwrap().dims, nats(&[1, 1, 2, 4, 3, 1, 0]));
    }

    #[test]
    fn oracle_examples() {
        let bound = DEFAULT_ORACLE_BOUND;
        assert_eq!(graded_invariants_oracle(2, bound).unwrap().dims, nats(&[1, 1, 0]));
        assert_eq!(graded_invariants_oracle(3, bound).unwrap().dims, nats(&[1, 1, 1, 1]));
        assert_eq!(
            graded_invariants_oracle(6, bound).unwrap().dims,
            nats(&[1, 1, 2, 4, 3, 1, 0])
        );
        assert_eq!(
            graded_invariants_oracle(17, bound),
            Err(Error::OracleBoundExceeded { n: 17, bound: 16 })
        );
        assert!(graded_invariants_oracle(5, 4).is_err());
    }

    #[test]
    fn shift_sign_small_cases() {
        // {0, 1} under +1 mod 2 is a transposition
        assert_eq!(shift_sign(0b11, 2, 1), -1);
        // {0, 1, 2} under +1 mod 3 is a 3-cycle
        assert_eq!(shift_sign(0b111, 3, 1), 1);
        // {0, 2} under +2 mod 4 swaps the two elements
        assert_eq!(shift_sign(0b0101, 4, 2), -1);
        assert_eq!(shift_sign(0, 4, 1), 1);
    }

    #[test]
    fn betti_examples() {
        assert_eq!(betti_x(3).unwrap().betti, nats(&[1, 0, 1]));
        assert_eq!(betti_x(2).unwrap().betti, nats(&[1, 0]));
        assert_eq!(betti_x(6).unwrap().betti, nats(&[1, 0, 2, 2, 1, 0]));
        assert_eq!(betti_x(1).unwrap().betti, nats(&[1]));
        assert_eq!(betti_x(5).unwrap().betti, nats(&[1, 0, 2, 0, 1]));
    }

    #[test]
    fn betti_recursion_rejects_bad_input() {
        let bad = GradedDims {
            n: 3,
            dims: nats(&[1, 0, 0, 1]),
        };
        assert!(matches!(betti_from_invariants(&bad), Err(Error::Consistency { .. })));
        let bad = GradedDims {
            n: 2,
            dims: nats(&[1, 1, 1]),
        };
        assert!(matches!(betti_from_invariants(&bad), Err(Error::Consistency { .. })));
    }

    #[test]
    fn total_dim_examples() {
        assert_eq!(total_dim(6).unwrap(), BigUint::from(12u32));
        assert_eq!(total_dim(1).unwrap(), BigUint::from(2u32));
        assert_eq!(total_dim(17).unwrap() / 2u32, BigUint::from(3856u32));
        assert!(total_dim(0).is_err());
    }

    #[test]
    fn reduced_invariant_examples() {
        assert_eq!(reduced_invariants(2).unwrap(), nats(&[1, 0]));
        assert_eq!(reduced_invariants(3).unwrap(), nats(&[1, 0, 1]));
        assert_eq!(reduced_invariants(1).unwrap(), nats(&[1]));
    }

    #[test]
    fn exterior_traces_of_permutation() {
        // a 3-cycle on C^3: det(1 + λP) = 1 + λ^3
        let p: Matrix = vec![
            ints(&[0, 0, 1]),
            ints(&[1, 0, 0]),
            ints(&[0, 1, 0]),
        ];
        assert_eq!(exterior_traces(&p), ints(&[1, 0, 0, 1]));
        assert_eq!(exterior_traces(&identity(4)), ints(&[1, 4, 6, 4, 1]));
    }

    #[test]
    fn component_betti_examples() {
        let c = Component::new(4, 2, RationalAngle::new(1, 2)).unwrap();
        assert_eq!(component_betti(&c).unwrap().betti, nats(&[1, 0]));
        assert_eq!(component_betti_oracle(&c).unwrap(), nats(&[1, 0]));
        let c = Component::new(5, 2, RationalAngle::new(3, 5)).unwrap();
        assert_eq!(component_betti(&c).unwrap().betti, nats(&[1]));
        for j in 0..2 {
            let c = Component::new(6, 3, RationalAngle::new(j, 2)).unwrap();
            assert_eq!(component_betti(&c).unwrap().betti, nats(&[1, 0, 1]));
            assert_eq!(component_betti_oracle(&c).unwrap(), nats(&[1, 0, 1]));
        }
    }

    #[test]
    fn induced_action_is_a_g_cycle() {
        for n in 1..=12u64 {
            for c in enumerate_components(n).unwrap() {
                let images = induced_shift(&c);
                let g = c.g() as usize;
                let mut srcs: Vec<_> = images.iter().map(|&(s, _)| s).collect();
                // coordinate j - 1 moves to j (mod g)
                assert!(srcs.iter().enumerate().all(|(j, &s)| s == (j + g - 1) % g));
                srcs.sort_unstable();
                assert_eq!(srcs, (0..g).collect::<Vec<_>>());
            }
        }
    }
}
