use crate::scalar::Scalar;

use super::AxiomError;

/// Is there an injection `h` from `b` into `a` with `a[h(i)] > b[i]` strictly for every `i`?
///
/// Sorting both lists in decreasing order and pairing them position by
/// position is optimal: if any dominating injection exists, this one does.
pub fn dominating_injection_exists<T: Scalar>(a: &[T], b: &[T]) -> Result<bool, AxiomError> {
    if a.len() < b.len() {
        return Err(AxiomError::InvalidArguments(format!(
            "dominating list has {} entries, dominated list has {}",
            a.len(),
            b.len()
        )));
    }
    let (a, b) = (sorted_desc(a), sorted_desc(b));
    Ok(a.iter().zip(&b).all(|(x, y)| x.exceeds(y)))
}

pub(crate) fn sorted_desc<T: Scalar>(xs: &[T]) -> Vec<T> {
    let mut v = xs.to_vec();
    v.sort_by(|x, y| y.partial_cmp(x).unwrap_or(std::cmp::Ordering::Equal));
    v
}
