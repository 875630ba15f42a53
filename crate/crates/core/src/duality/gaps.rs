//! Gaps in the homomorphism order obtained from duality pairs.


use super::verify_duality_pair;
use crate::algebra::{product, sum};
use crate::canon::enumerate_up_to_iso;
use crate::error::{Error, Result};
use crate::hom::maps_to;
use crate::structure::Structure;

/// For a duality pair `(F, D)` and `F × D -> A -> D`, the gap `(A, A + F)`.
pub fn gap_from_duality(f: &Structure, d: &Structure, a: &Structure) -> Result<(Structure, Structure)> {
    if f.sig() != a.sig() {
        return Err(Error::SignatureMismatch);
    }
    if !verify_duality_pair(f, d)? {
        return Err(Error::Precondition("not a duality pair".into()));
    }
    let fd = product(&[f.clone(), d.clone()])?;
    if !maps_to(&fd, a) || !maps_to(a, d) {
        return Err(Error::Precondition("need F x D -> A -> D".into()));
    }
    Ok((a.clone(), sum(&[a.clone(), f.clone()])?))
}

/// A structure of `universe` strictly between `low` and `high`.
pub fn strictly_between<'u>(low: &Structure, high: &Structure, universe: &'u [Structure]) -> Option<&'u Structure> {
    universe.iter().find(|x| maps_to(low, x) && !maps_to(x, low) && maps_to(x, high) && !maps_to(high, x))
}

/// True when `low < high` and no structure with at most `n` vertices lies
/// strictly between them.
pub fn bounded_gap_check(low: &Structure, high: &Structure, n: usize) -> Result<bool> {
    if low.sig() != high.sig() {
        return Err(Error::SignatureMismatch);
    }
    if !maps_to(low, high) || maps_to(high, low) {
        return Ok(false);
    }
    let universe = enumerate_up_to_iso(low.sig(), n)?;
    Ok(strictly_between(low, high, &universe).is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{path, tournament};

    #[test]
    fn gap_above_t2() {
        let (low, high) = gap_from_duality(&path(2), &tournament(2), &tournament(2)).unwrap();
        assert!(bounded_gap_check(&low, &high, 3).unwrap());
    }

    #[test]
    fn outside_the_interval() {
        assert!(gap_from_duality(&path(2), &tournament(2), &path(2)).is_err());
        assert!(!bounded_gap_check(&path(1), &path(3), 3).unwrap());
    }
}
