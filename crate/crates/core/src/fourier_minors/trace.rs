use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::IndexSet;
use crate::cyclotomic::{CycInt, Prime, Valuation};
use crate::error::{Error, Result};
use crate::fp_poly::{FpPoly, FpScalar};

/// `g(x) = Σ a_j x^j` with coefficients in Z[ω]; only non-zero terms are kept.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseCycPoly {
    prime: Prime,
    terms: BTreeMap<u32, CycInt>,
}

impl SparseCycPoly {
    pub fn new(prime: Prime, terms: impl IntoIterator<Item = (u32, CycInt)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (j, a) in terms {
            prime.ensure_same(a.prime())?;
            if j >= prime.get() {
                return Err(Error::IndexOutOfRange {
                    index: i64::from(j),
                    p: prime.get(),
                });
            }
            if map.insert(j, a).is_some() {
                return Err(Error::OutOfRange(format!("duplicate exponent {j}")));
            }
        }
        map.retain(|_, a: &mut CycInt| !a.is_zero());
        Ok(SparseCycPoly { prime, terms: map })
    }

    pub fn prime(&self) -> Prime {
        self.prime
    }

    pub fn terms(&self) -> &BTreeMap<u32, CycInt> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `g(ω^i)`.
    pub fn evaluate_at_omega_pow(&self, i: u32) -> CycInt {
        self.terms
            .iter()
            .fold(CycInt::zero(self.prime), |acc, (&j, a)| {
                &acc + &a.mul_omega_pow(i64::from(i) * i64::from(j))
            })
    }

    /// `{"p": 5, "terms": {"0": ["1","0","0","0"], …}}`.
    pub fn from_json(json: &str) -> Result<Self> {
        #[derive(Deserialize)]
        struct Raw {
            p: u64,
            terms: BTreeMap<u32, Vec<String>>,
        }
        let raw: Raw = serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))?;
        let prime = Prime::new(raw.p)?;
        let terms = raw
            .terms
            .into_iter()
            .map(|(j, c)| Ok((j, CycInt::from_strings(prime, &c)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(prime, terms)
    }
}

impl Serialize for SparseCycPoly {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Raw<'a> {
            p: u32,
            terms: &'a BTreeMap<u32, CycInt>,
        }
        Raw {
            p: self.prime.get(),
            terms: &self.terms,
        }
        .serialize(serializer)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    /// Some row equation fails, so the vector is not in the kernel.
    NotInKernel {
        witness_row: u32,
    },
    ZeroVector,
    /// Every row equation holds for a non-zero vector. Unreachable for prime p.
    ContradictionImpossible,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RowResidual {
    pub row: u32,
    pub value: CycInt,
}

/// The kernel argument carried out on concrete coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProofTrace {
    pub p: u32,
    pub rows: IndexSet,
    pub coeffs: SparseCycPoly,
    /// `Σ_j a_j ω^(i·j)` for each row i.
    pub residuals: Vec<RowResidual>,
    /// Smallest `(1 - ω)`-adic valuation among the coefficients.
    pub min_valuation: Valuation,
    /// Coefficients after dividing out `(1 - ω)^min_valuation`.
    pub divided_coeffs: BTreeMap<u32, CycInt>,
    /// Image of each divided coefficient in F_p.
    pub reduced_values: BTreeMap<u32, u64>,
    /// The reduced polynomial ḡ over F_p; absent for the zero vector.
    pub reduced_poly: Option<FpPoly>,
    pub multiplicity_at_one: Option<usize>,
    pub nonzero_coeffs: Option<usize>,
    /// `multiplicity_at_one < nonzero_coeffs`.
    pub multiplicity_bound_strict: Option<bool>,
    pub verdict: Verdict,
}

/// Traces why no non-zero `a` with `|supp a| <= |I|` satisfies
/// `Σ_j a_j ω^(i·j) = 0` for all `i ∈ I`.
///
/// Coefficients are divided by the largest common power of `1 - ω`, so at
/// least one of them survives the reduction to F_p. The reduced polynomial is
/// non-zero with at most `|I|` terms, hence vanishes at 1 to order below
/// `|I|`; it would have to vanish to order `|I|` if every row equation held.
pub fn proof_trace(rows: &IndexSet, coeffs: &SparseCycPoly) -> Result<ProofTrace> {
    let prime = rows.prime();
    prime.ensure_same(coeffs.prime())?;
    if coeffs.terms().len() > rows.len() {
        return Err(Error::SizeMismatch(format!(
            "{} non-zero coefficients but only {} rows",
            coeffs.terms().len(),
            rows.len()
        )));
    }

    let residuals: Vec<RowResidual> = rows
        .elems()
        .iter()
        .map(|&row| RowResidual {
            row,
            value: coeffs.evaluate_at_omega_pow(row),
        })
        .collect();

    let min_valuation = coeffs
        .terms()
        .values()
        .map(CycInt::valuation_one_minus_omega)
        .min()
        .unwrap_or(Valuation::Infinite);

    let mut trace = ProofTrace {
        p: prime.get(),
        rows: rows.clone(),
        coeffs: coeffs.clone(),
        residuals,
        min_valuation,
        divided_coeffs: BTreeMap::new(),
        reduced_values: BTreeMap::new(),
        reduced_poly: None,
        multiplicity_at_one: None,
        nonzero_coeffs: None,
        multiplicity_bound_strict: None,
        verdict: Verdict::ZeroVector,
    };

    let Valuation::Finite(m) = min_valuation else {
        return Ok(trace);
    };

    for (&j, a) in coeffs.terms() {
        let mut q = a.clone();
        for _ in 0..m {
            q = q.divide_by_one_minus_omega()?;
        }
        trace
            .reduced_values
            .insert(j, q.reduce_mod_one_minus_omega());
        trace.divided_coeffs.insert(j, q);
    }
    let dense: Vec<CycInt> = (0..prime.get())
        .map(|j| {
            trace
                .divided_coeffs
                .get(&j)
                .cloned()
                .unwrap_or_else(|| CycInt::zero(prime))
        })
        .collect();
    let g_bar = FpPoly::reduce_cyclotomic(prime, &dense);
    if g_bar.is_zero() {
        return Err(Error::TheoremViolation(
            "reduction of minimally divided coefficients vanished".into(),
        ));
    }
    let multiplicity = g_bar.root_multiplicity(FpScalar::new(prime, 1))?;
    let count = g_bar.nonzero_coeff_count();
    trace.multiplicity_at_one = Some(multiplicity);
    trace.nonzero_coeffs = Some(count);
    trace.multiplicity_bound_strict = Some(multiplicity < count);
    trace.reduced_poly = Some(g_bar);

    trace.verdict = match trace.residuals.iter().find(|r| !r.value.is_zero()) {
        Some(r) => Verdict::NotInKernel { witness_row: r.row },
        None => Verdict::ContradictionImpossible,
    };
    Ok(trace)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prime(p: u64) -> Prime {
        Prime::new(p).unwrap()
    }

    #[test]
    fn one_minus_x_is_not_in_kernel() {
        let p = prime(5);
        let rows = IndexSet::new(p, &[0, 1]).unwrap();
        let g =
            SparseCycPoly::new(p, [(0, CycInt::one(p)), (1, CycInt::from_integer(p, -1))]).unwrap();
        let t = proof_trace(&rows, &g).unwrap();
        assert_eq!(t.verdict, Verdict::NotInKernel { witness_row: 1 });
        assert!(t.residuals[0].value.is_zero());
        assert_eq!(t.residuals[1].value, CycInt::one_minus_omega(p));
        assert_eq!(t.min_valuation, Valuation::Finite(0));
        // ḡ = 1 - x vanishes once at 1 with two terms
        assert_eq!(t.multiplicity_at_one, Some(1));
        assert_eq!(t.nonzero_coeffs, Some(2));
    }

    #[test]
    fn zero_vector() {
        let p = prime(5);
        let rows = IndexSet::new(p, &[0, 1]).unwrap();
        let g = SparseCycPoly::new(p, [(0, CycInt::zero(p))]).unwrap();
        assert!(g.is_zero());
        let t = proof_trace(&rows, &g).unwrap();
        assert_eq!(t.verdict, Verdict::ZeroVector);
        assert_eq!(t.min_valuation, Valuation::Infinite);
        assert_eq!(t.reduced_poly, None);
    }

    #[test]
    fn divides_out_common_power() {
        let p = prime(3);
        let rows = IndexSet::new(p, &[1, 2]).unwrap();
        let pi = CycInt::one_minus_omega(p);
        let w = CycInt::omega(p);
        let g = SparseCycPoly::new(p, [(0, pi.clone()), (2, &pi * &w)]).unwrap();
        let t = proof_trace(&rows, &g).unwrap();
        assert_eq!(t.min_valuation, Valuation::Finite(1));
        assert_eq!(t.divided_coeffs[&0], CycInt::one(p));
        assert_eq!(t.divided_coeffs[&2], w);
        assert_eq!(
            t.reduced_values.values().copied().collect::<Vec<_>>(),
            vec![1, 1]
        );
        assert_eq!(t.reduced_poly, Some(FpPoly::new(p, &[1, 0, 1])));
        assert_eq!(t.multiplicity_bound_strict, Some(true));
        assert!(matches!(t.verdict, Verdict::NotInKernel { .. }));
    }

    #[test]
    fn too_many_terms() {
        let p = prime(5);
        let rows = IndexSet::new(p, &[0]).unwrap();
        let g = SparseCycPoly::new(p, [(0, CycInt::one(p)), (1, CycInt::one(p))]).unwrap();
        assert!(matches!(
            proof_trace(&rows, &g),
            Err(Error::SizeMismatch(_))
        ));
    }

    #[test]
    fn json_round_trip() {
        let json = r#"{"p":3,"terms":{"0":["1","-1"],"2":["0","0"]}}"#;
        let g = SparseCycPoly::from_json(json).unwrap();
        assert_eq!(g.terms().len(), 1);
        assert_eq!(
            serde_json::to_string(&g).unwrap(),
            r#"{"p":3,"terms":{"0":["1","-1"]}}"#
        );
        assert!(SparseCycPoly::from_json(r#"{"p":4,"terms":{}}"#).is_err());
        assert!(SparseCycPoly::from_json(r#"{"p":3,"terms":{"3":["1","0"]}}"#).is_err());
    }
}
