//! Koszul signs, shuffles and shuffle products.
//!
//! Permutations are 0-based images: `sigma[i]` is the position that the
//! `i`-th tensor factor moves to, so the permuted word is
//! `x_{sigma^-1(0)} (x) ... (x) x_{sigma^-1(p+q-1)}`.

use crate::error::{Error, Result};

pub type Permutation = Vec<usize>;

/// A tensor word `x_{word[0]} (x) x_{word[1]} (x) ...` with a sign.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedWord {
    pub sign: i32,
    pub word: Vec<usize>,
}

fn parity(odd: bool) -> i32 {
    if odd {
        -1
    } else {
        1
    }
}

fn check_permutation(sigma: &[usize]) -> Result<()> {
    let mut seen = vec![false; sigma.len()];
    for &s in sigma {
        if s >= sigma.len() || std::mem::replace(&mut seen[s], true) {
            return Err(Error::Domain(format!("{sigma:?} is not a permutation")));
        }
    }
    Ok(())
}

/// Sign of the permutation: `(-1)^(number of inversions)`.
pub fn permutation_sign(sigma: &[usize]) -> i32 {
    let mut inversions = 0usize;
    for i in 0..sigma.len() {
        for j in i + 1..sigma.len() {
            if sigma[i] > sigma[j] {
                inversions += 1;
            }
        }
    }
    parity(inversions % 2 == 1)
}

/// The Koszul sign of moving homogeneous factors of the given degrees by
/// `sigma`: the product over inversions `i < j`, `sigma(i) > sigma(j)` of
/// `(-1)^(deg_i deg_j)`.
pub fn koszul_sign(sigma: &[usize], degrees: &[i32]) -> Result<i32> {
    if sigma.len() != degrees.len() {
        return Err(Error::Domain(format!(
            "permutation of length {} with {} degrees",
            sigma.len(),
            degrees.len()
        )));
    }
    check_permutation(sigma)?;
    let mut odd = false;
    for i in 0..sigma.len() {
        for j in i + 1..sigma.len() {
            if sigma[i] > sigma[j] && (degrees[i] * degrees[j]) % 2 != 0 {
                odd = !odd;
            }
        }
    }
    Ok(parity(odd))
}

/// Sign picked up by a map of degree `op_degree` passing elements whose
/// degrees sum to `left_degree`: `(-1)^(op_degree * left_degree)`.
pub fn koszul_operator_sign(op_degree: i32, left_degree: i32) -> i32 {
    parity((op_degree * left_degree) % 2 != 0)
}

/// All `(p, q)`-shuffles in lexicographic order of their image sequences.
pub fn shuffles(p: usize, q: usize) -> Vec<Permutation> {
    let total = p + q;
    let mut out = Vec::new();
    // Choose the image set of the first p factors; lexicographic order of
    // those sets gives lexicographic order of the full sequences.
    let mut chosen = Vec::with_capacity(p);
    fn rec(start: usize, total: usize, p: usize, chosen: &mut Vec<usize>, out: &mut Vec<Permutation>) {
        if chosen.len() == p {
            let rest: Vec<usize> = (0..total).filter(|i| !chosen.contains(i)).collect();
            out.push(chosen.iter().copied().chain(rest).collect());
            return;
        }
        for i in start..total {
            chosen.push(i);
            rec(i + 1, total, p, chosen, out);
            chosen.pop();
        }
    }
    rec(0, total, p, &mut chosen, &mut out);
    out
}

/// The shuffle product `nu_{p,q}` on factors of the given degrees, as a
/// signed list of index words with sign `sgn(sigma) * eps(sigma)`.
pub fn shuffle_product(p: usize, q: usize, degrees: &[i32]) -> Result<Vec<SignedWord>> {
    if degrees.len() != p + q {
        return Err(Error::Domain(format!(
            "shuffle product nu_({p},{q}) applied to {} factors",
            degrees.len()
        )));
    }
    shuffles(p, q)
        .into_iter()
        .map(|sigma| {
            let sign = permutation_sign(&sigma) * koszul_sign(&sigma, degrees)?;
            let mut word = vec![0; sigma.len()];
            for (i, &s) in sigma.iter().enumerate() {
                word[s] = i;
            }
            Ok(SignedWord { sign, word })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binomial(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn koszul_examples() {
        assert_eq!(koszul_sign(&[0, 1, 2], &[1, 3, 5]).unwrap(), 1);
        assert_eq!(koszul_sign(&[1, 0], &[1, 1]).unwrap(), -1);
        assert_eq!(koszul_sign(&[1, 0], &[2, 1]).unwrap(), 1);
        assert!(koszul_sign(&[1, 0], &[1]).is_err());
        assert!(koszul_sign(&[0, 0], &[1, 1]).is_err());
    }

    #[test]
    fn shuffle_counts_and_order() {
        assert_eq!(shuffles(1, 1), vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(
            shuffles(2, 1),
            vec![vec![0, 1, 2], vec![0, 2, 1], vec![1, 2, 0]]
        );
        assert_eq!(shuffles(2, 2).len(), 6);
        for p in 1..5 {
            for q in 1..5 {
                let all = shuffles(p, q);
                assert_eq!(all.len(), binomial(p + q, p));
                for s in &all {
                    assert!(s[..p].windows(2).all(|w| w[0] < w[1]));
                    assert!(s[p..].windows(2).all(|w| w[0] < w[1]));
                }
                assert!(all.windows(2).all(|w| w[0] < w[1]));
            }
        }
    }

    #[test]
    fn nu_one_one_on_odd_factors() {
        // omega (x) tau - (-1)^{1*1} tau (x) omega
        let terms = shuffle_product(1, 1, &[1, 1]).unwrap();
        assert_eq!(
            terms,
            vec![
                SignedWord { sign: 1, word: vec![0, 1] },
                SignedWord { sign: 1, word: vec![1, 0] },
            ]
        );
        assert!(shuffle_product(1, 1, &[1]).is_err());
    }

    #[test]
    fn operator_sign() {
        assert_eq!(koszul_operator_sign(1, 1), -1);
        assert_eq!(koszul_operator_sign(-1, 1), -1);
        assert_eq!(koszul_operator_sign(-1, 2), 1);
        assert_eq!(koszul_operator_sign(0, 3), 1);
    }
}
