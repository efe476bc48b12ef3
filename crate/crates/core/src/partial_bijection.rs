//! Bijections of a nonempty subset of `{1, …, n}` onto itself.

use std::fmt;

use crate::error::{Error, Result};

/// Canonical form: `domain` sorted (1-based points), `image` parallel to it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartialBijection {
    n: usize,
    domain: Vec<usize>,
    image: Vec<usize>,
}

impl PartialBijection {
    /// Builds from `(point, image)` pairs over the ground set `{1, …, n}`.
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut sorted = pairs.to_vec();
        sorted.sort_unstable();
        let domain: Vec<usize> = sorted.iter().map(|&(x, _)| x).collect();
        let image: Vec<usize> = sorted.iter().map(|&(_, y)| y).collect();
        if domain.is_empty() {
            return Err(Error::DomainMismatch("empty domain".into()));
        }
        if let Some(&bad) = domain.iter().chain(&image).find(|&&x| x == 0 || x > n) {
            return Err(Error::DomainMismatch(format!("point {bad} is outside 1..={n}")));
        }
        if domain.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::DomainMismatch("point mapped twice".into()));
        }
        let mut img = image.clone();
        img.sort_unstable();
        if img != domain {
            return Err(Error::DomainMismatch("not a bijection of its domain onto itself".into()));
        }
        Ok(PartialBijection { n, domain, image })
    }

    /// Identity on `domain` (1-based points).
    pub fn identity(n: usize, domain: &[usize]) -> Result<Self> {
        let pairs: Vec<_> = domain.iter().map(|&x| (x, x)).collect();
        Self::from_pairs(n, &pairs)
    }

    /// Entry `i` is `0` outside the domain, otherwise the image of `i+1`.
    pub fn key(&self) -> Vec<u32> {
        let mut key = vec![0; self.n];
        for (&x, &y) in self.domain.iter().zip(&self.image) {
            key[x - 1] = y as u32;
        }
        key
    }

    pub fn from_key(key: &[u32]) -> Result<Self> {
        let pairs: Vec<_> =
            key.iter().enumerate().filter(|(_, &y)| y != 0).map(|(i, &y)| (i + 1, y as usize)).collect();
        Self::from_pairs(key.len(), &pairs)
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn domain(&self) -> &[usize] {
        &self.domain
    }

    pub fn apply(&self, x: usize) -> Option<usize> {
        let i = self.domain.binary_search(&x).ok()?;
        Some(self.image[i])
    }

    pub fn inverse(&self) -> Self {
        let pairs: Vec<_> = self.domain.iter().zip(&self.image).map(|(&x, &y)| (y, x)).collect();
        Self::from_pairs(self.n, &pairs).expect("inverse of a bijection")
    }

    /// `self ∘ other`, defined when both have the same domain.
    pub fn compose(&self, other: &Self) -> Option<Self> {
        if self.n != other.n || self.domain != other.domain {
            return None;
        }
        let image = other.image.iter().map(|&y| self.apply(y).expect("same domain")).collect();
        Some(PartialBijection { n: self.n, domain: self.domain.clone(), image })
    }

    /// `+1` for even permutations of the domain, `-1` for odd ones.
    pub fn sign(&self) -> i8 {
        let mut seen = vec![false; self.domain.len()];
        let mut transpositions = 0;
        for start in 0..self.domain.len() {
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                len += 1;
                i = self.domain.binary_search(&self.image[i]).expect("image in domain");
            }
            if len > 0 {
                transpositions += len - 1;
            }
        }
        if transpositions % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Every partial bijection over `{1, …, n}`: each nonempty subset with
    /// each of its permutations.
    pub fn all(n: usize) -> Vec<Self> {
        let mut out = Vec::new();
        for mask in 1u32..(1 << n) {
            let domain: Vec<usize> = (1..=n).filter(|&x| mask & (1 << (x - 1)) != 0).collect();
            let mut image = domain.clone();
            loop {
                out.push(PartialBijection { n, domain: domain.clone(), image: image.clone() });
                if !next_permutation(&mut image) {
                    break;
                }
            }
        }
        out
    }
}

fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).expect("successor exists");
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

impl fmt::Display for PartialBijection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.domain.iter().zip(&self.image).map(|(x, y)| format!("{x}->{y}")).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// `(|SG_n|, |SG_{n,0}|) = (Σ_{k=1}^{n} k!·C(n,k), 2ⁿ - 1)`.
pub fn sg_cardinality(n: u32) -> (u128, u128) {
    let mut total = 0u128;
    let mut falling = 1u128; // n·(n-1)·…·(n-k+1) = k!·C(n,k)
    for k in 1..=n as u128 {
        falling *= n as u128 - k + 1;
        total += falling;
    }
    (total, (1u128 << n) - 1)
}
