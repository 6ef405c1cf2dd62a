use std::fs;
use std::path::Path;

use crdsa_core::bitop::base_lattice;
use crdsa_core::crdsa::{c2_power_dsa, c4_chain_dsa, MAX_POWER};
use crdsa_core::finalg::{ring_majority_term, ring_malcev_term, z3, DEFAULT_CARRIER_CAP};
use crdsa_core::{c3_malcev_term, C3Power, DistributivityWitness, FiniteAlgebra, TernaryVector};

use crate::CliError;

/// Overrides the carrier cap of enumeration-based commands.
pub const CARRIER_CAP_VAR: &str = "CRDSA_MAX_CARRIER";

pub fn carrier_cap() -> Result<usize, CliError> {
    match std::env::var(CARRIER_CAP_VAR) {
        Ok(raw) => raw
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&c| c > 0)
            .ok_or_else(|| {
                CliError::Usage(format!("{CARRIER_CAP_VAR} must be a positive integer"))
            }),
        Err(_) => Ok(DEFAULT_CARRIER_CAP),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fixture {
    C3,
    Z3,
    C3Pow(usize),
    C2Pow(usize),
    C4,
    Chain(usize),
}

impl Fixture {
    /// `c3`, `z3`, `c4`, `c3pow:<n>`, `c2pow:<n>` or `chain:<n>`.
    pub fn parse(spec: &str) -> Result<Fixture, CliError> {
        let bad = || {
            CliError::Usage(format!(
                "unknown fixture `{spec}` (expected c3, z3, c4, c3pow:<n>, c2pow:<n> or chain:<n>)"
            ))
        };
        let sized = |raw: &str, lo: usize, hi: usize| -> Result<usize, CliError> {
            let n: usize = raw.parse().map_err(|_| bad())?;
            if (lo..=hi).contains(&n) {
                Ok(n)
            } else {
                Err(CliError::Usage(format!(
                    "fixture `{spec}`: size must be in {lo}..={hi}"
                )))
            }
        };
        match spec.split_once(':') {
            None => match spec {
                "c3" => Ok(Fixture::C3),
                "z3" => Ok(Fixture::Z3),
                "c4" => Ok(Fixture::C4),
                _ => Err(bad()),
            },
            Some(("c3pow", n)) => Ok(Fixture::C3Pow(sized(n, 1, MAX_POWER)?)),
            Some(("c2pow", n)) => Ok(Fixture::C2Pow(sized(n, 1, 6)?)),
            Some(("chain", n)) => Ok(Fixture::Chain(sized(n, 2, 64)?)),
            Some(_) => Err(bad()),
        }
    }

    pub fn algebra(self) -> Result<FiniteAlgebra, CliError> {
        Ok(match self {
            Fixture::C3 => C3Power::new(1)?.algebra().clone(),
            Fixture::C3Pow(n) => C3Power::new(n)?.algebra().clone(),
            Fixture::Z3 => z3(),
            Fixture::C2Pow(n) => c2_power_dsa(n)?,
            Fixture::C4 => c4_chain_dsa(),
            Fixture::Chain(n) => {
                let family: Vec<u128> = (0..n).map(|i| (1u128 << i) - 1).collect();
                base_lattice(&family)?.0
            }
        })
    }

    /// Ternary names of the elements, for powers of `C_3`.
    pub fn names(self) -> Option<Vec<String>> {
        let n = match self {
            Fixture::C3 => 1,
            Fixture::C3Pow(n) => n,
            _ => return None,
        };
        Some(
            (0..3usize.pow(n as u32))
                .map(|i| TernaryVector::from_index(n, i).to_string())
                .collect(),
        )
    }

    /// The witness terms named for this fixture by the primality check.
    pub fn primality_witnesses(self) -> Option<(crdsa_core::Term, DistributivityWitness)> {
        match self {
            Fixture::Z3 => Some((
                ring_malcev_term(),
                DistributivityWitness::Majority(ring_majority_term()),
            )),
            Fixture::Chain(_) => None,
            _ => Some((c3_malcev_term(), DistributivityWitness::LatticeReduct)),
        }
    }
}

/// An algebra from `--fixture` or `--algebra`, with element names if known.
pub struct Loaded {
    pub fixture: Option<Fixture>,
    pub algebra: FiniteAlgebra,
    pub names: Option<Vec<String>>,
}

impl Loaded {
    pub fn name(&self, e: usize) -> String {
        match &self.names {
            Some(n) => n[e].clone(),
            None => e.to_string(),
        }
    }
}

pub fn load(fixture: Option<&str>, file: Option<&Path>) -> Result<Loaded, CliError> {
    match (fixture, file) {
        (Some(spec), None) => {
            let f = Fixture::parse(spec)?;
            Ok(Loaded {
                fixture: Some(f),
                algebra: f.algebra()?,
                names: f.names(),
            })
        }
        (None, Some(path)) => {
            let text = read(path)?;
            let algebra = FiniteAlgebra::from_json(&text)
                .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
            Ok(Loaded {
                fixture: None,
                algebra,
                names: None,
            })
        }
        _ => Err(CliError::Usage(
            "give exactly one of --fixture or --algebra".into(),
        )),
    }
}

pub fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fixtures() {
        assert_eq!(Fixture::parse("c3").unwrap(), Fixture::C3);
        assert_eq!(Fixture::parse("c3pow:2").unwrap(), Fixture::C3Pow(2));
        assert_eq!(Fixture::parse("chain:4").unwrap(), Fixture::Chain(4));
        assert!(Fixture::parse("c3pow:0").is_err());
        assert!(Fixture::parse("c3pow:x").is_err());
        assert!(Fixture::parse("c5").is_err());
        assert_eq!(Fixture::C3Pow(2).algebra().unwrap().size(), 9);
        assert_eq!(Fixture::C3.names().unwrap(), ["0", "S", "1"]);
    }
}
