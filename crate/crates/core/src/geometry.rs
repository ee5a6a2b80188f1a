//! Field-of-moduli checks for curves and pointed varieties whose automorphism
//! group is cyclic of order `n`.
//!
//! Both checks are the cyclic dimension criterion applied to a representation
//! that is never constructed: holomorphic differentials for curves, the
//! tangent space at the marked point for pointed varieties. Only the
//! dimension data enter.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::arith::prime_divisors;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveInstance {
    pub n: u64,
    pub genus: u64,
    /// Genus of `X/H_p` for every prime `p | n`.
    pub quotient_genus: BTreeMap<u64, u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MarkedInstance {
    pub n: u64,
    pub dim: u64,
    /// `dim_{x0} X^{H_p}` for every prime `p | n`.
    pub fixed_dim: BTreeMap<u64, u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ModuliVerdict {
    DefinedOverFieldOfModuli,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeDifference {
    pub prime: u64,
    pub difference: u64,
    pub divisible: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionNote {
    pub summary: String,
    pub induced_checks: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeometryReport {
    pub verdict: ModuliVerdict,
    pub primes: Vec<PrimeDifference>,
    /// Hypotheses taken on trust from the caller.
    pub assumptions: Vec<String>,
    pub note: Option<ReductionNote>,
}

/// Every prime divisor of `n` must have an entry, and nothing else may.
fn check_keys(n: u64, data: &BTreeMap<u64, u64>, missing: fn(u64) -> Error) -> Result<Vec<u64>> {
    let primes = prime_divisors(n);
    if let Some(&extra) = data.keys().find(|k| !primes.contains(k)) {
        return Err(Error::UnexpectedPrime(extra));
    }
    if let Some(&p) = primes.iter().find(|p| !data.contains_key(p)) {
        return Err(missing(p));
    }
    Ok(primes)
}

fn differences(primes: &[u64], total: u64, data: &BTreeMap<u64, u64>) -> Vec<PrimeDifference> {
    primes
        .iter()
        .map(|&p| {
            let difference = total - data[&p];
            PrimeDifference {
                prime: p,
                difference,
                divisible: difference.is_multiple_of(p),
            }
        })
        .collect()
}

fn verdict(primes: &[PrimeDifference]) -> ModuliVerdict {
    if primes.iter().any(|d| d.divisible) {
        ModuliVerdict::Unknown
    } else {
        ModuliVerdict::DefinedOverFieldOfModuli
    }
}

fn validate_curve(c: &CurveInstance) -> Result<Vec<u64>> {
    if c.n == 0 {
        return Err(Error::InvalidGenus("n must be positive".into()));
    }
    if c.genus < 2 {
        return Err(Error::InvalidGenus(format!("genus {} < 2", c.genus)));
    }
    let primes = check_keys(c.n, &c.quotient_genus, Error::MissingQuotientGenus)?;
    if let Some((p, g)) = c.quotient_genus.iter().find(|(_, &g)| g > c.genus) {
        return Err(Error::InvalidGenus(format!(
            "quotient genus {g} at p = {p} exceeds genus {}",
            c.genus
        )));
    }
    Ok(primes)
}

/// Defined over the field of moduli when `p ∤ g(X) − g(X/H_p)` for every `p | n`.
pub fn curve_check(c: &CurveInstance) -> Result<GeometryReport> {
    let primes = validate_curve(c)?;
    let primes = differences(&primes, c.genus, &c.quotient_genus);
    Ok(GeometryReport {
        verdict: verdict(&primes),
        primes,
        assumptions: vec![
            format!(
                "Aut(X) over the algebraic closure is cyclic of order exactly {}",
                c.n
            ),
            format!("{} is prime to the characteristic", c.n),
        ],
        note: Some(curve_to_representation_note(c)),
    })
}

pub fn marked_check(m: &MarkedInstance) -> Result<GeometryReport> {
    if m.n == 0 {
        return Err(Error::InvalidDims("n must be positive".into()));
    }
    if m.dim < 1 {
        return Err(Error::InvalidDims(
            "dimension at x0 must be at least 1".into(),
        ));
    }
    let primes = check_keys(m.n, &m.fixed_dim, Error::MissingFixedDim)?;
    if let Some((p, f)) = m.fixed_dim.iter().find(|(_, &f)| f > m.dim) {
        return Err(Error::InvalidDims(format!(
            "fixed-locus dimension {f} at p = {p} exceeds dim {}",
            m.dim
        )));
    }
    let primes = differences(&primes, m.dim, &m.fixed_dim);
    Ok(GeometryReport {
        verdict: verdict(&primes),
        primes,
        assumptions: vec![
            format!("Aut(X, x0) is isomorphic to mu_{}", m.n),
            "x0 is a smooth point of X".to_string(),
        ],
        note: None,
    })
}

/// How the curve check reduces to the cyclic dimension criterion.
pub fn curve_to_representation_note(c: &CurveInstance) -> ReductionNote {
    let induced_checks = prime_divisors(c.n)
        .into_iter()
        .filter_map(|p| c.quotient_genus.get(&p).map(|&gp| (p, gp)))
        .map(|(p, gp)| {
            let diff = c.genus.saturating_sub(gp);
            if diff % p == 0 {
                format!("p = {p}: {p} divides {} - {gp} = {diff}; criterion silent, not a negative result", c.genus)
            } else {
                format!("p = {p}: induced check is {p} does not divide {} - {gp} = {diff}", c.genus)
            }
        })
        .collect();
    ReductionNote {
        summary: "the cyclic group acts on V = H^0(X, Omega_X), with dim V = g(X) and dim V^{H_p} = g(X/H_p); the check is the cyclic dimension criterion on V".to_string(),
        induced_checks,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curve(n: u64, genus: u64, q: &[(u64, u64)]) -> CurveInstance {
        CurveInstance {
            n,
            genus,
            quotient_genus: q.iter().copied().collect(),
        }
    }

    fn marked(n: u64, dim: u64, f: &[(u64, u64)]) -> MarkedInstance {
        MarkedInstance {
            n,
            dim,
            fixed_dim: f.iter().copied().collect(),
        }
    }

    #[test]
    fn curve_examples() {
        let r = curve_check(&curve(2, 3, &[(2, 0)])).unwrap();
        assert_eq!(r.verdict, ModuliVerdict::DefinedOverFieldOfModuli);
        assert_eq!(r.primes[0].difference, 3);
        assert_eq!(
            curve_check(&curve(7, 10, &[(7, 3)])).unwrap().verdict,
            ModuliVerdict::Unknown
        );
        assert_eq!(
            curve_check(&curve(6, 4, &[(2, 1), (3, 2)]))
                .unwrap()
                .verdict,
            ModuliVerdict::DefinedOverFieldOfModuli
        );
    }

    #[test]
    fn curve_errors() {
        assert_eq!(
            curve_check(&curve(6, 4, &[(2, 1)])),
            Err(Error::MissingQuotientGenus(3))
        );
        assert!(matches!(
            curve_check(&curve(2, 1, &[(2, 0)])),
            Err(Error::InvalidGenus(_))
        ));
        assert!(matches!(
            curve_check(&curve(2, 3, &[(2, 4)])),
            Err(Error::InvalidGenus(_))
        ));
        assert_eq!(
            curve_check(&curve(2, 3, &[(2, 0), (3, 0)])),
            Err(Error::UnexpectedPrime(3))
        );
    }

    #[test]
    fn marked_examples() {
        assert_eq!(
            marked_check(&marked(2, 1, &[(2, 0)])).unwrap().verdict,
            ModuliVerdict::DefinedOverFieldOfModuli
        );
        assert_eq!(
            marked_check(&marked(3, 3, &[(3, 0)])).unwrap().verdict,
            ModuliVerdict::Unknown
        );
        let r = marked_check(&marked(1, 2, &[])).unwrap();
        assert_eq!(r.verdict, ModuliVerdict::DefinedOverFieldOfModuli);
        assert!(r.primes.is_empty());
        assert_eq!(
            marked_check(&marked(4, 2, &[])),
            Err(Error::MissingFixedDim(2))
        );
        assert!(matches!(
            marked_check(&marked(2, 1, &[(2, 2)])),
            Err(Error::InvalidDims(_))
        ));
        assert_eq!(
            marked_check(&marked(1, 2, &[(5, 0)])),
            Err(Error::UnexpectedPrime(5))
        );
    }

    #[test]
    fn notes() {
        let note = curve_to_representation_note(&curve(2, 3, &[(2, 0)]));
        assert_eq!(note.induced_checks.len(), 1);
        assert!(note.induced_checks[0].contains("2 does not divide 3 - 0"));
        let note = curve_to_representation_note(&curve(5, 7, &[(5, 2)]));
        assert!(note.induced_checks[0].contains("not a negative result"));
    }

    #[test]
    fn json_format() {
        let c: CurveInstance =
            serde_json::from_str(r#"{"n":6,"genus":4,"quotient_genus":{"2":1,"3":2}}"#).unwrap();
        assert_eq!(c, curve(6, 4, &[(2, 1), (3, 2)]));
        let m: MarkedInstance =
            serde_json::from_str(r#"{"n":2,"dim":1,"fixed_dim":{"2":0}}"#).unwrap();
        assert_eq!(m, marked(2, 1, &[(2, 0)]));
    }
}
