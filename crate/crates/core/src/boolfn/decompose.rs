//! Party decompositions of a Boolean function's ANF.

use std::collections::{BTreeMap, HashMap};

use super::anf::{eval_anf, to_anf, Anf, Monomial};
use super::function::BooleanFunction;
use super::BoolFnError;
use crate::bits::Bit;

/// Two-party inner-product decomposition `f = ⊕ᵢ Pᵢ(x⃗)·Qᵢ(y⃗)`.
///
/// The decomposition is not unique; this one groups the ANF monomials of `f`
/// by their first-party factor, so each `Pᵢ` is a single monomial over the
/// first party's variables and `Qᵢ` collects the matching second-party
/// parts. Terms are ordered by `Pᵢ` degree then lexicographically, with a
/// constant-1 `Pᵢ` last.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    alice: PartyVars,
    bob: PartyVars,
    terms: Vec<(Anf, Anf)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct PartyVars {
    name: String,
    variables: Vec<String>,
}

impl Decomposition {
    /// The `(Pᵢ, Qᵢ)` term list.
    pub fn terms(&self) -> &[(Anf, Anf)] {
        &self.terms
    }

    /// The number of terms `m`.
    pub fn m(&self) -> usize {
        self.terms.len()
    }

    pub fn alice_name(&self) -> &str {
        &self.alice.name
    }

    pub fn bob_name(&self) -> &str {
        &self.bob.name
    }

    pub fn alice_variables(&self) -> &[String] {
        &self.alice.variables
    }

    pub fn bob_variables(&self) -> &[String] {
        &self.bob.variables
    }

    /// Evaluate every `Pᵢ` on the first party's input bits.
    pub fn eval_p(&self, x: &[Bit]) -> Vec<Bit> {
        let env = bind(&self.alice.variables, x);
        self.terms
            .iter()
            .map(|(p, _)| eval_anf(p, &env).expect("P_i references only first-party variables"))
            .collect()
    }

    /// Evaluate every `Qᵢ` on the second party's input bits.
    pub fn eval_q(&self, y: &[Bit]) -> Vec<Bit> {
        let env = bind(&self.bob.variables, y);
        self.terms
            .iter()
            .map(|(_, q)| eval_anf(q, &env).expect("Q_i references only second-party variables"))
            .collect()
    }

    /// Evaluate `⊕ᵢ Pᵢ(x)·Qᵢ(y)`.
    pub fn eval(&self, x: &[Bit], y: &[Bit]) -> Bit {
        self.eval_p(x)
            .into_iter()
            .zip(self.eval_q(y))
            .fold(Bit::ZERO, |acc, (p, q)| acc ^ (p & q))
    }
}

fn bind(variables: &[String], bits: &[Bit]) -> HashMap<String, Bit> {
    assert_eq!(
        variables.len(),
        bits.len(),
        "input arity must match the variable count"
    );
    variables
        .iter()
        .cloned()
        .zip(bits.iter().copied())
        .collect()
}

/// Split a monomial into the part owned by `owner` and the rest.
fn restrict(monomial: &Monomial, owned: &[String]) -> (Monomial, Monomial) {
    let mut mine = Monomial::new();
    let mut rest = Monomial::new();
    for var in monomial {
        if owned.iter().any(|v| v == var) {
            mine.insert(var.clone());
        } else {
            rest.insert(var.clone());
        }
    }
    (mine, rest)
}

/// Order for P-monomials: by degree then lexicographic, constant 1 last.
fn p_order(a: &Monomial, b: &Monomial) -> std::cmp::Ordering {
    match (a.is_empty(), b.is_empty()) {
        (true, true) => std::cmp::Ordering::Equal,
        (true, false) => std::cmp::Ordering::Greater,
        (false, true) => std::cmp::Ordering::Less,
        (false, false) => a.len().cmp(&b.len()).then_with(|| a.cmp(b)),
    }
}

/// Compute the canonical two-party inner-product decomposition.
pub fn inner_product_decomposition(f: &BooleanFunction) -> Result<Decomposition, BoolFnError> {
    if f.party_count() != 2 {
        return Err(BoolFnError::WrongPartyCount(f.party_count()));
    }
    let alice = &f.parties()[0];
    let bob = &f.parties()[1];
    let anf = to_anf(f);

    let mut groups: Vec<(Monomial, Vec<Monomial>)> = Vec::new();
    for monomial in anf.monomials() {
        let (p_part, q_part) = restrict(monomial, &alice.variables);
        match groups.iter_mut().find(|(p, _)| p == &p_part) {
            Some((_, qs)) => qs.push(q_part),
            None => groups.push((p_part, vec![q_part])),
        }
    }
    groups.sort_by(|(a, _), (b, _)| p_order(a, b));

    let terms = groups
        .into_iter()
        .map(|(p, qs)| (Anf::single(p), Anf::from_monomials(qs)))
        .collect();
    Ok(Decomposition {
        alice: PartyVars {
            name: alice.name.clone(),
            variables: alice.variables.clone(),
        },
        bob: PartyVars {
            name: bob.name.clone(),
            variables: bob.variables.clone(),
        },
        terms,
    })
}

/// Degree-2 multiparty form: monomial products grouped into per-pair
/// buckets `(j₁, j₂)` with `j₁ > j₂` (0-based party indices).
///
/// Monomials local to a single party are folded into a pair with the lowest
/// other party, with partner polynomial the constant 1, so every term is
/// still a two-party product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Degree2Form {
    parties: Vec<PartyVars>,
    /// Bucket key `(j1, j2)` with `j1 > j2`; each entry pairs a polynomial
    /// over party `j1`'s variables with one over party `j2`'s.
    buckets: BTreeMap<(usize, usize), Vec<(Anf, Anf)>>,
}

impl Degree2Form {
    pub fn party_count(&self) -> usize {
        self.parties.len()
    }

    pub fn party_name(&self, idx: usize) -> &str {
        &self.parties[idx].name
    }

    pub fn party_variables(&self, idx: usize) -> &[String] {
        &self.parties[idx].variables
    }

    pub fn buckets(&self) -> &BTreeMap<(usize, usize), Vec<(Anf, Anf)>> {
        &self.buckets
    }

    /// Participation bit λ for a party pair: 1 when the pair has a bucket.
    pub fn lambda(&self, j1: usize, j2: usize) -> Bit {
        let key = if j1 > j2 { (j1, j2) } else { (j2, j1) };
        Bit(self
            .buckets
            .get(&key)
            .is_some_and(|terms| !terms.is_empty()))
    }

    /// Evaluate the reconstructed sum on per-party inputs (ordered like the
    /// parties).
    pub fn eval(&self, inputs: &[&[Bit]]) -> Bit {
        assert_eq!(
            inputs.len(),
            self.parties.len(),
            "one input slice per party"
        );
        let envs: Vec<HashMap<String, Bit>> = self
            .parties
            .iter()
            .zip(inputs)
            .map(|(p, bits)| bind(&p.variables, bits))
            .collect();
        let mut acc = Bit::ZERO;
        for ((j1, j2), terms) in &self.buckets {
            for (p1, p2) in terms {
                let a = eval_anf(p1, &envs[*j1]).expect("bucket polynomial variables");
                let b = eval_anf(p2, &envs[*j2]).expect("bucket polynomial variables");
                acc ^= a & b;
            }
        }
        acc
    }
}

/// Decompose an n-party function into the degree-2 pair form. Fails with
/// [`BoolFnError::Degree2Violation`] when some ANF monomial spans three or
/// more parties.
pub fn degree2_decomposition(f: &BooleanFunction) -> Result<Degree2Form, BoolFnError> {
    let n_parties = f.party_count();
    if n_parties < 3 {
        return Err(BoolFnError::TooFewParties(n_parties));
    }
    let anf = to_anf(f);
    let mut buckets: BTreeMap<(usize, usize), Vec<(Anf, Anf)>> = BTreeMap::new();

    for monomial in anf.monomials() {
        let mut touched: Vec<usize> = monomial
            .iter()
            .map(|v| f.owner_of(v).expect("ANF variables are declared"))
            .collect();
        touched.sort_unstable();
        touched.dedup();
        match touched.as_slice() {
            [] => {
                // Constant term: fold into the lowest pair as 1·1.
                buckets
                    .entry((1, 0))
                    .or_default()
                    .push((Anf::constant_one(), Anf::constant_one()));
            }
            [j] => {
                // Single-party monomial: partner with the lowest other
                // party, whose polynomial is the constant 1.
                let partner = if *j == 0 { 1 } else { 0 };
                let (hi, lo) = (j.max(&partner), j.min(&partner));
                let term = Anf::single(monomial.clone());
                let entry = buckets.entry((*hi, *lo)).or_default();
                if *j == *hi {
                    entry.push((term, Anf::constant_one()));
                } else {
                    entry.push((Anf::constant_one(), term));
                }
            }
            [j2, j1] => {
                let vars_hi = &f.parties()[*j1].variables;
                let (hi_part, lo_part) = restrict(monomial, vars_hi);
                buckets
                    .entry((*j1, *j2))
                    .or_default()
                    .push((Anf::single(hi_part), Anf::single(lo_part)));
            }
            more => {
                return Err(BoolFnError::Degree2Violation {
                    monomial: monomial.iter().cloned().collect(),
                    span: more.len(),
                });
            }
        }
    }

    Ok(Degree2Form {
        parties: f
            .parties()
            .iter()
            .map(|p| PartyVars {
                name: p.name.clone(),
                variables: p.variables.clone(),
            })
            .collect(),
        buckets,
    })
}
