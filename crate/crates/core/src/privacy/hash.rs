//! Linear-congruence hashing `h(x) = ((θx + φ) mod p) mod m`.
//!
//! Every user owns one `(θ, φ)` pair. The affine part is a bijection of
//! `[0, p)`, so bin `t` holds exactly the keys whose image lies in
//! `{t, t + m, t + 2m, ...} ∩ [0, p)`. Keys in `[n, p)` are dummies with no
//! incident edges, and every bin is padded with further dummies up to `s`
//! slots.

use rand::Rng;

use super::prime::{pow_mod, smallest_prime_above};
use crate::error::{Error, Result};

const MAX_NODES: usize = 1 << 31;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HashCoefficients {
    pub theta: u64,
    pub phi: u64,
    theta_inv: u64,
}

impl HashCoefficients {
    fn new(theta: u64, phi: u64, p: u64) -> Result<Self> {
        if theta == 0 || theta >= p || phi >= p {
            return Err(Error::invalid(format!(
                "hash coefficients (θ={theta}, φ={phi}) outside [1,{p})×[0,{p})"
            )));
        }
        Ok(HashCoefficients {
            theta,
            phi,
            theta_inv: pow_mod(theta, p - 2, p),
        })
    }
}

/// One slot of a padded hash group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Member {
    Real(usize),
    Dummy,
}

/// Public hashing parameters broadcast by the server.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HashScheme {
    n: usize,
    p: u64,
    s: usize,
    m: usize,
    coeffs: Vec<HashCoefficients>,
}

impl HashScheme {
    /// Draws fresh coefficients for `n` users with sampling size `s`.
    pub fn new<R: Rng + ?Sized>(n: usize, s: usize, rng: &mut R) -> Result<Self> {
        let p = Self::validate(n, s)?;
        let coeffs = (0..n)
            .map(|_| {
                let theta = rng.gen_range(1..p);
                let phi = rng.gen_range(0..p);
                HashCoefficients::new(theta, phi, p)
            })
            .collect::<Result<_>>()?;
        Ok(Self::assemble(n, p, s, coeffs))
    }

    /// Builds a scheme from explicit `(θ, φ)` pairs, one per user.
    pub fn with_coefficients(n: usize, s: usize, pairs: &[(u64, u64)]) -> Result<Self> {
        let p = Self::validate(n, s)?;
        Self::with_prime(n, p, s, pairs)
    }

    /// As [`HashScheme::with_coefficients`] with an explicit prime `p > n`.
    pub fn with_prime(n: usize, p: u64, s: usize, pairs: &[(u64, u64)]) -> Result<Self> {
        if s == 0 || p <= n as u64 || !super::is_prime(p) || p >= 1 << 32 {
            return Err(Error::invalid(format!("p={p} must be a prime in ({n}, 2^32), s={s} ≥ 1")));
        }
        let coeffs = pairs
            .iter()
            .map(|&(t, f)| HashCoefficients::new(t, f, p))
            .collect::<Result<_>>()?;
        Ok(Self::assemble(n, p, s, coeffs))
    }

    fn validate(n: usize, s: usize) -> Result<u64> {
        if n == 0 || n >= MAX_NODES {
            return Err(Error::invalid(format!("node count {n} must be in 1..2^31")));
        }
        if s == 0 {
            return Err(Error::invalid("sampling size must be at least 1"));
        }
        Ok(smallest_prime_above(n as u64))
    }

    fn assemble(n: usize, p: u64, s: usize, coeffs: Vec<HashCoefficients>) -> Self {
        let m = p.div_ceil(s as u64) as usize;
        HashScheme { n, p, s, m, coeffs }
    }

    pub fn n(&self) -> usize {
        self.n
    }
    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn s(&self) -> usize {
        self.s
    }
    pub fn m(&self) -> usize {
        self.m
    }
    pub fn users(&self) -> usize {
        self.coeffs.len()
    }
    pub fn coefficients(&self, user: usize) -> HashCoefficients {
        self.coeffs[user]
    }

    /// `h_user(key)`; rejects keys outside `[0, p)`.
    pub fn hash(&self, user: usize, key: u64) -> Result<usize> {
        if key >= self.p {
            return Err(Error::KeyOutOfRange { key, p: self.p });
        }
        Ok(self.bin(user, key as usize))
    }

    /// Unchecked `h_user(key)` for keys known to be below `p`.
    #[inline]
    pub fn bin(&self, user: usize, key: usize) -> usize {
        let c = &self.coeffs[user];
        (((c.theta * key as u64 + c.phi) % self.p) % self.m as u64) as usize
    }

    /// The `slot`-th of the `s` padded slots of bin `bin` for `user`.
    #[inline]
    pub fn slot(&self, user: usize, bin: usize, slot: usize) -> Member {
        let y = bin as u64 + slot as u64 * self.m as u64;
        if y >= self.p {
            return Member::Dummy;
        }
        let c = &self.coeffs[user];
        let x = (c.theta_inv * ((y + self.p - c.phi) % self.p)) % self.p;
        if x >= self.n as u64 {
            Member::Dummy
        } else {
            Member::Real(x as usize)
        }
    }

    /// Keys of the extended space `[0, p)` hashing to `bin`, before padding.
    pub fn bin_keys(&self, user: usize, bin: usize) -> Vec<u64> {
        let c = &self.coeffs[user];
        (bin as u64..self.p)
            .step_by(self.m)
            .map(|y| (c.theta_inv * ((y + self.p - c.phi) % self.p)) % self.p)
            .collect()
    }

    /// The `m` groups of exactly `s` members each for `user`. Keys `>= n`
    /// and padding slots are [`Member::Dummy`].
    pub fn partition_groups(&self, user: usize, n: usize) -> Vec<Vec<Member>> {
        (0..self.m)
            .map(|t| {
                let mut group: Vec<Member> = self
                    .bin_keys(user, t)
                    .into_iter()
                    .map(|x| if (x as usize) < n { Member::Real(x as usize) } else { Member::Dummy })
                    .collect();
                group.resize(self.s, Member::Dummy);
                group
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn hash_examples() {
        // n = 10 gives p = 11; s = 3 gives m = 4
        let scheme = HashScheme::with_coefficients(10, 3, &[(1, 0), (3, 2)]).unwrap();
        assert_eq!((scheme.p(), scheme.m()), (11, 4));
        assert_eq!(scheme.hash(0, 7).unwrap(), 3);
        assert_eq!(scheme.hash(1, 5).unwrap(), 2);
        assert!(matches!(scheme.hash(0, 11), Err(Error::KeyOutOfRange { .. })));
    }

    #[test]
    fn rejects_bad_coefficients() {
        assert!(HashScheme::with_coefficients(10, 3, &[(0, 1)]).is_err());
        assert!(HashScheme::with_coefficients(10, 3, &[(11, 1)]).is_err());
        assert!(HashScheme::with_coefficients(10, 0, &[(1, 1)]).is_err());
        assert!(HashScheme::with_prime(10, 12, 3, &[(1, 1)]).is_err());
    }

    #[test]
    fn s_one_is_identity_partition() {
        let scheme = HashScheme::new(10, 1, &mut ChaCha8Rng::seed_from_u64(1)).unwrap();
        assert_eq!(scheme.m(), 11);
        let groups = scheme.partition_groups(4, 10);
        let mut reals: Vec<usize> = groups
            .iter()
            .inspect(|g| assert_eq!(g.len(), 1))
            .filter_map(|g| match g[0] {
                Member::Real(x) => Some(x),
                Member::Dummy => None,
            })
            .collect();
        reals.sort_unstable();
        assert_eq!(reals, (0..10).collect::<Vec<_>>());
    }

    #[test]
    fn small_partition_enumeration() {
        // n = 7: p = 11, s = 3, m = 4. Enumerate bins directly from the formula.
        let scheme = HashScheme::with_prime(7, 11, 3, &[(5, 9)]).unwrap();
        let groups = scheme.partition_groups(0, 7);
        assert_eq!(groups.len(), 4);
        for (t, g) in groups.iter().enumerate() {
            assert_eq!(g.len(), 3);
            let expected: Vec<usize> = (0..7).filter(|&x| ((5 * x + 9) % 11) % 4 == t).collect();
            let mut got: Vec<usize> = g
                .iter()
                .filter_map(|m| if let Member::Real(x) = m { Some(*x) } else { None })
                .collect();
            got.sort_unstable();
            assert_eq!(got, expected);
        }
    }

    #[test]
    fn slots_agree_with_bins() {
        let scheme = HashScheme::new(50, 4, &mut ChaCha8Rng::seed_from_u64(3)).unwrap();
        for user in [0, 17, 49] {
            for t in 0..scheme.m() {
                for r in 0..scheme.s() {
                    if let Member::Real(x) = scheme.slot(user, t, r) {
                        assert_eq!(scheme.bin(user, x), t);
                    }
                }
                let keys = scheme.bin_keys(user, t);
                assert!(keys.iter().all(|&k| scheme.bin(user, k as usize) == t));
            }
        }
    }
}
