//! Residuals of the Stasheff relations, the A-infinity morphism relations and
//! the C-infinity shuffle conditions, evaluated on pure tensors.
//!
//! Every checker returns the residual element, which is zero exactly when
//! the relation holds on the given tuple.

use crate::cinfty::graded::{apply_tensor_ops, sum_terms, GradedElement, GradedOp, GradedOpSet};
use crate::cinfty::sign::shuffle_product;
use crate::error::{Error, Result};

fn check_len<A>(n: usize, tuple: &[A]) -> Result<()> {
    if n == 0 || tuple.len() != n {
        return Err(Error::Domain(format!(
            "relation of order {n} evaluated on {} factors",
            tuple.len()
        )));
    }
    Ok(())
}

fn sign_of(exponent: usize) -> i32 {
    if exponent % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `sum_{r+s+t=n} (-1)^{r+st} m_{r+t+1}(1^{(x)r} (x) m_s (x) 1^{(x)t})` on
/// `tuple`.
pub fn check_stasheff<A>(m: &GradedOpSet<A, A>, n: usize, tuple: &[A]) -> Result<A>
where
    A: GradedElement + 'static,
{
    check_len(n, tuple)?;
    m.get(n)?;
    let id = GradedOp::<A, A>::identity();
    let mut terms = Vec::new();
    for s in 1..=n {
        let inner = m.get(s)?;
        for r in 0..=n - s {
            let t = n - s - r;
            let mut word: Vec<&GradedOp<A, A>> = vec![&id; r];
            word.push(inner);
            word.extend(std::iter::repeat(&id).take(t));
            let (koszul, factors) = apply_tensor_ops(&word, tuple)?;
            let value = m.eval(r + t + 1, &factors)?;
            terms.push(value.signed(koszul * sign_of(r + s * t)));
        }
    }
    Ok(sum_terms(terms).expect("at least one term"))
}

/// All compositions of `n` into positive parts, parts in order.
pub fn compositions(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        for mut rest in compositions(n - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Residual of the A-infinity morphism relation of order `n` for
/// `f: (A, m) -> (B, mbar)`:
///
/// ```text
/// sum (-1)^{r+st} f_{r+t+1}(1^r (x) m_s (x) 1^t)
///   - sum_{i_1+...+i_r=n} (-1)^l mbar_r(f_{i_1} (x) ... (x) f_{i_r}),
/// l = sum_j (r-j)(i_j - 1).
/// ```
pub fn check_morphism<A, B>(
    f: &GradedOpSet<A, B>,
    m: &GradedOpSet<A, A>,
    mbar: &GradedOpSet<B, B>,
    n: usize,
    tuple: &[A],
) -> Result<B>
where
    A: GradedElement + 'static,
    B: GradedElement + 'static,
{
    check_len(n, tuple)?;
    f.get(n)?;
    let id = GradedOp::<A, A>::identity();
    let mut terms = Vec::new();
    for s in 1..=n {
        let inner = m.get(s)?;
        for r in 0..=n - s {
            let t = n - s - r;
            let mut word: Vec<&GradedOp<A, A>> = vec![&id; r];
            word.push(inner);
            word.extend(std::iter::repeat(&id).take(t));
            let (koszul, factors) = apply_tensor_ops(&word, tuple)?;
            let value = f.eval(r + t + 1, &factors)?;
            terms.push(value.signed(koszul * sign_of(r + s * t)));
        }
    }
    for parts in compositions(n) {
        let r = parts.len();
        let word: Vec<&GradedOp<A, B>> = parts
            .iter()
            .map(|&i| f.get(i))
            .collect::<Result<_>>()?;
        let (koszul, factors) = apply_tensor_ops(&word, tuple)?;
        let value = mbar.eval(r, &factors)?;
        let l: usize = parts
            .iter()
            .enumerate()
            .map(|(j, &i)| (r - (j + 1)) * (i - 1))
            .sum();
        // moved to the left-hand side
        terms.push(value.signed(-koszul * sign_of(l)));
    }
    Ok(sum_terms(terms).expect("at least one term"))
}

/// `op(nu_{p,q}(tuple))`, which vanishes for C-infinity operations.
pub fn check_shuffle_vanishing<A, B>(op: &GradedOp<A, B>, p: usize, q: usize, tuple: &[A]) -> Result<B>
where
    A: GradedElement,
    B: GradedElement,
{
    if p == 0 || q == 0 {
        return Err(Error::Domain("shuffle products need p, q >= 1".to_string()));
    }
    let degrees: Vec<i32> = tuple.iter().map(GradedElement::degree).collect();
    let words = shuffle_product(p, q, &degrees)?;
    let mut terms = Vec::with_capacity(words.len());
    for w in words {
        let permuted: Vec<A> = w.word.iter().map(|&i| tuple[i].clone()).collect();
        terms.push(op.eval(&permuted)?.signed(w.sign));
    }
    Ok(sum_terms(terms).expect("shuffles are nonempty"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_counts() {
        assert_eq!(compositions(1), vec![vec![1]]);
        assert_eq!(compositions(3).len(), 4);
        assert_eq!(compositions(4).len(), 8);
        assert!(compositions(5).iter().all(|c| c.iter().sum::<usize>() == 5));
    }
}
