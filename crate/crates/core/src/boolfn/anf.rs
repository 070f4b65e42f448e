//! Algebraic normal form: the unique XOR-of-monomials representation of a
//! Boolean function over GF(2), computed by the standard Möbius transform.

use std::collections::BTreeSet;
use std::fmt;

use super::function::BooleanFunction;
use super::BoolFnError;
use crate::bits::Bit;

/// One monomial: the AND of a set of variables. The empty monomial is the
/// constant 1.
pub type Monomial = BTreeSet<String>;

/// An XOR-sum of distinct monomials.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Anf {
    monomials: BTreeSet<Monomial>,
}

impl Anf {
    pub fn zero() -> Self {
        Anf::default()
    }

    pub fn constant_one() -> Self {
        let mut monomials = BTreeSet::new();
        monomials.insert(Monomial::new());
        Anf { monomials }
    }

    pub fn from_monomials<I: IntoIterator<Item = Monomial>>(monomials: I) -> Self {
        // XOR semantics: a monomial appearing twice cancels.
        let mut set = BTreeSet::new();
        for m in monomials {
            if !set.remove(&m) {
                set.insert(m);
            }
        }
        Anf { monomials: set }
    }

    pub fn single(monomial: Monomial) -> Self {
        Anf::from_monomials([monomial])
    }

    pub fn monomials(&self) -> &BTreeSet<Monomial> {
        &self.monomials
    }

    pub fn is_zero(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn is_constant_one(&self) -> bool {
        self.monomials.len() == 1 && self.monomials.contains(&Monomial::new())
    }

    /// All variables referenced by any monomial.
    pub fn variables(&self) -> BTreeSet<&str> {
        self.monomials
            .iter()
            .flat_map(|m| m.iter().map(String::as_str))
            .collect()
    }

    /// Largest monomial size (polynomial degree); 0 for constants.
    pub fn degree(&self) -> usize {
        self.monomials.iter().map(|m| m.len()).max().unwrap_or(0)
    }
}

impl fmt::Display for Anf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.monomials.is_empty() {
            return write!(f, "0");
        }
        let rendered: Vec<String> = self
            .monomials
            .iter()
            .map(|m| {
                if m.is_empty() {
                    "1".to_string()
                } else {
                    m.iter().cloned().collect::<Vec<_>>().join("*")
                }
            })
            .collect();
        write!(f, "{}", rendered.join(" ^ "))
    }
}

/// Compute the ANF of a function by the in-place GF(2) Möbius transform of
/// its truth table.
pub fn to_anf(f: &BooleanFunction) -> Anf {
    let n = f.n_variables();
    let names = f.variables();
    let mut coeffs: Vec<bool> = f.truth_table().iter().map(|b| b.is_one()).collect();
    for k in 0..n {
        let stride = 1usize << k;
        for idx in 0..coeffs.len() {
            if idx & stride != 0 {
                coeffs[idx] ^= coeffs[idx ^ stride];
            }
        }
    }
    let mut monomials = BTreeSet::new();
    for (mask, coeff) in coeffs.iter().enumerate() {
        if *coeff {
            let mut monomial = Monomial::new();
            for (k, name) in names.iter().enumerate() {
                // Variable k occupies index bit n-1-k.
                if mask & (1 << (n - 1 - k)) != 0 {
                    monomial.insert((*name).to_string());
                }
            }
            monomials.insert(monomial);
        }
    }
    Anf { monomials }
}

/// Evaluate an ANF under a variable assignment: XOR over monomials of the
/// AND of their variables.
pub fn eval_anf(
    p: &Anf,
    assignment: &std::collections::HashMap<String, Bit>,
) -> Result<Bit, BoolFnError> {
    let mut acc = Bit::ZERO;
    for monomial in &p.monomials {
        let mut product = Bit::ONE;
        for var in monomial {
            let bit = assignment
                .get(var)
                .ok_or_else(|| BoolFnError::MissingVariable(var.clone()))?;
            product = product & *bit;
        }
        acc ^= product;
    }
    Ok(acc)
}
