//! Boolean functions as truth tables over party-owned variables.

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use super::BoolFnError;
use crate::bits::Bit;

/// One party and the variables it owns, in declaration order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartySpec {
    pub name: String,
    pub variables: Vec<String>,
}

/// A Boolean function with its full truth table.
///
/// Variables are ordered by declaration: parties in declared order, each
/// party's variables in declared order, and the first variable is the most
/// significant bit of a truth-table index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BooleanFunction {
    parties: Vec<PartySpec>,
    truth_table: Vec<Bit>,
}

impl BooleanFunction {
    pub(crate) fn new(parties: Vec<PartySpec>, truth_table: Vec<Bit>) -> Self {
        let n: usize = parties.iter().map(|p| p.variables.len()).sum();
        assert_eq!(truth_table.len(), 1 << n, "truth table length must be 2^n");
        BooleanFunction {
            parties,
            truth_table,
        }
    }

    pub fn parties(&self) -> &[PartySpec] {
        &self.parties
    }

    pub fn party_count(&self) -> usize {
        self.parties.len()
    }

    /// All variable names in global declaration order.
    pub fn variables(&self) -> Vec<&str> {
        self.parties
            .iter()
            .flat_map(|p| p.variables.iter().map(String::as_str))
            .collect()
    }

    pub fn n_variables(&self) -> usize {
        self.parties.iter().map(|p| p.variables.len()).sum()
    }

    /// Index of the party owning a variable, if declared.
    pub fn owner_of(&self, variable: &str) -> Option<usize> {
        self.parties
            .iter()
            .position(|p| p.variables.iter().any(|v| v == variable))
    }

    pub fn truth_table(&self) -> &[Bit] {
        &self.truth_table
    }

    /// Evaluate on per-party input bit vectors, ordered like the parties.
    pub fn eval(&self, inputs: &[&[Bit]]) -> Bit {
        assert_eq!(
            inputs.len(),
            self.parties.len(),
            "one input slice per party"
        );
        let n = self.n_variables();
        let mut idx = 0usize;
        let mut offset = 0usize;
        for (party, bits) in self.parties.iter().zip(inputs) {
            assert_eq!(
                bits.len(),
                party.variables.len(),
                "input arity for party {}",
                party.name
            );
            for (k, bit) in bits.iter().enumerate() {
                if bit.is_one() {
                    idx |= 1 << (n - 1 - (offset + k));
                }
            }
            offset += party.variables.len();
        }
        self.truth_table[idx]
    }
}

/// On-disk function definition:
/// `{"parties": {"alice": ["x1"], "bob": ["y1"]}, "expr": "x1 & y1"}`.
/// Party order in the document is the declaration order.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FunctionFile {
    pub parties: IndexMap<String, Vec<String>>,
    pub expr: String,
}

impl FunctionFile {
    pub fn party_specs(&self) -> Result<Vec<PartySpec>, BoolFnError> {
        let mut seen_parties = std::collections::HashSet::new();
        let mut seen_vars = std::collections::HashSet::new();
        let mut specs = Vec::new();
        for (name, variables) in &self.parties {
            if !seen_parties.insert(name.clone()) {
                return Err(BoolFnError::DuplicateParty(name.clone()));
            }
            for v in variables {
                if !seen_vars.insert(v.clone()) {
                    return Err(BoolFnError::DuplicateVariable(v.clone()));
                }
            }
            specs.push(PartySpec {
                name: name.clone(),
                variables: variables.clone(),
            });
        }
        Ok(specs)
    }

    /// Parse the expression against the declared parties.
    pub fn parse(&self) -> Result<BooleanFunction, BoolFnError> {
        super::parse_expression(&self.expr, &self.party_specs()?)
    }
}
