//! One statistic family, answered by any engine.
//!
//! A [`Family`] fixes the alphabet, the partition and which refined statistic
//! is counted. [`count`] and [`table`] then evaluate it by closed form,
//! brute-force enumeration, the transfer recurrence or series expansion.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::binom::{multinomial, weak_compositions};
use crate::error::{Error, Result};
use crate::formulas::{self, FormulaId};
use crate::oracle::{self, ConstraintSpec};
use crate::series::{self, Marker, TrackingSpec};
use crate::word::{BlockPartition, Letter, Stat};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Engine {
    ClosedForm,
    Oracle,
    Transfer,
    Series,
}

impl Engine {
    pub const ALL: [Engine; 4] = [
        Engine::ClosedForm,
        Engine::Oracle,
        Engine::Transfer,
        Engine::Series,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Engine::ClosedForm => "closed-form",
            Engine::Oracle => "oracle",
            Engine::Transfer => "transfer",
            Engine::Series => "series",
        }
    }
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Engine {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Engine::ALL
            .into_iter()
            .find(|e| e.name() == s)
            .ok_or_else(|| Error::invalid(format!("unknown engine '{s}'")))
    }
}

/// A refined statistic on words (or, for `HallRemmel`, on rearrangements of
/// a fixed multiset).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    /// Levels starting in `[t]`, alphabet `[k]`.
    LevelsThreshold { k: u32, t: u32 },
    /// Levels per block, blocks being consecutive runs of the given sizes.
    LevelsBlocks { sizes: Vec<u32> },
    /// Descents starting in `[t]`.
    DesLe { k: u32, t: u32 },
    /// Descents starting above `t`.
    DesGt { k: u32, t: u32 },
    /// Descents starting at a letter congruent to `r` mod `s`.
    DesMod { s: u32, alphabet: u32, r: u32 },
    /// Descents with top in `x` and bottom in `y` among rearrangements of
    /// `1^{rho_1} 2^{rho_2} ...`.
    HallRemmel {
        rho: Vec<u32>,
        x: BTreeSet<Letter>,
        y: BTreeSet<Letter>,
    },
}

impl Family {
    pub const NAMES: [&'static str; 6] = [
        "levels-threshold",
        "levels-blocks",
        "des-le",
        "des-gt",
        "des-mod",
        "hall-remmel",
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Family::LevelsThreshold { .. } => "levels-threshold",
            Family::LevelsBlocks { .. } => "levels-blocks",
            Family::DesLe { .. } => "des-le",
            Family::DesGt { .. } => "des-gt",
            Family::DesMod { .. } => "des-mod",
            Family::HallRemmel { .. } => "hall-remmel",
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Family::LevelsThreshold { k, t } | Family::DesLe { k, t } => {
                if *t == 0 || t > k {
                    return Err(Error::invalid(format!(
                        "need 1 <= t <= k, got t={t}, k={k}"
                    )));
                }
            }
            Family::DesGt { k, t } => {
                if *k == 0 || t > k {
                    return Err(Error::invalid(format!(
                        "need 0 <= t <= k and k >= 1, got t={t}, k={k}"
                    )));
                }
            }
            Family::LevelsBlocks { sizes } => {
                if sizes.is_empty() || sizes.contains(&0) {
                    return Err(Error::invalid("block sizes must be positive and non-empty"));
                }
            }
            Family::DesMod { s, alphabet, r } => {
                if *s < 2 || *r == 0 || r > s || *alphabet == 0 {
                    return Err(Error::invalid(format!(
                        "need s >= 2, 1 <= r <= s, alphabet >= 1; got s={s}, r={r}, alphabet={alphabet}"
                    )));
                }
            }
            Family::HallRemmel { rho, x, y } => {
                let m = rho.len() as Letter;
                if m == 0 {
                    return Err(Error::invalid("multiplicity vector must be non-empty"));
                }
                if let Some(bad) = x.iter().chain(y).find(|&&l| l == 0 || l > m) {
                    return Err(Error::LetterOutOfRange { letter: *bad, k: m });
                }
            }
        }
        Ok(())
    }

    /// Alphabet size of the words counted.
    pub fn alphabet(&self) -> u32 {
        match self {
            Family::LevelsThreshold { k, .. }
            | Family::DesLe { k, .. }
            | Family::DesGt { k, .. } => *k,
            Family::LevelsBlocks { sizes } => sizes.iter().sum(),
            Family::DesMod { alphabet, .. } => *alphabet,
            Family::HallRemmel { rho, .. } => rho.len() as u32,
        }
    }

    /// Number of statistic coordinates in a table key.
    pub fn arity(&self) -> usize {
        match self {
            Family::LevelsBlocks { sizes } => sizes.len(),
            _ => 1,
        }
    }

    pub fn stat_labels(&self) -> Vec<String> {
        match self {
            Family::LevelsBlocks { sizes } => {
                (1..=sizes.len()).map(|i| format!("lev_{i}")).collect()
            }
            Family::LevelsThreshold { .. } => vec!["lev".into()],
            _ => vec!["des".into()],
        }
    }

    /// The partition and the tracked (block, statistic) coordinates, for the
    /// word families.
    fn word_setting(&self) -> Result<(BlockPartition, Vec<(u32, Stat)>)> {
        Ok(match self {
            Family::LevelsThreshold { k, t } => {
                (BlockPartition::threshold(*k, *t)?, vec![(1, Stat::Lev)])
            }
            Family::DesLe { k, t } => (BlockPartition::threshold(*k, *t)?, vec![(1, Stat::Des)]),
            Family::DesGt { k, t } => (BlockPartition::threshold(*k, *t)?, vec![(2, Stat::Des)]),
            Family::DesMod { s, alphabet, r } => (
                BlockPartition::mod_residue(*alphabet, *s)?,
                vec![(*r, Stat::Des)],
            ),
            Family::LevelsBlocks { sizes } => {
                let labels: Vec<u32> = sizes
                    .iter()
                    .enumerate()
                    .flat_map(|(i, &n)| std::iter::repeat_n(i as u32 + 1, n as usize))
                    .collect();
                let tracked = (1..=sizes.len() as u32).map(|b| (b, Stat::Lev)).collect();
                (BlockPartition::from_blocks(&labels)?, tracked)
            }
            Family::HallRemmel { .. } => {
                return Err(Error::invalid(
                    "hall-remmel counts rearrangements, not words over an alphabet",
                ))
            }
        })
    }

    /// Which closed form answers this family.
    pub fn formula_id(&self) -> FormulaId {
        match self {
            Family::LevelsThreshold { .. } => FormulaId::LevelsThreshold,
            Family::LevelsBlocks { .. } => FormulaId::LevelsBlocks,
            Family::DesLe { .. } => FormulaId::DesLe,
            Family::DesGt { .. } => FormulaId::DesGt,
            Family::DesMod { s, alphabet, r } => {
                let t = alphabet % s;
                if t == 0 {
                    FormulaId::DesModZeroResidue
                } else if *r > t {
                    FormulaId::DesModAboveOffset
                } else {
                    FormulaId::DesModWithinOffset
                }
            }
            Family::HallRemmel { .. } => FormulaId::HallRemmel,
        }
    }

    /// Number of objects counted at length `n`.
    pub fn population(&self, n: u32) -> BigInt {
        match self {
            Family::HallRemmel { rho, .. } => {
                let parts: Vec<u64> = rho.iter().map(|&r| r as u64).collect();
                BigInt::from(multinomial(&parts))
            }
            _ => num_traits::pow(BigInt::from(self.alphabet()), n as usize),
        }
    }

    fn check_length(&self, n: u32) -> Result<()> {
        if let Family::HallRemmel { rho, .. } = self {
            let total: u32 = rho.iter().sum();
            if total != n {
                return Err(Error::invalid(format!(
                    "multiplicities sum to {total}, expected n = {n}"
                )));
            }
        }
        Ok(())
    }
}

/// Statistic value (one coordinate per label) to count. Zero counts are omitted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StatTable {
    pub labels: Vec<String>,
    pub rows: BTreeMap<Vec<u32>, BigInt>,
}

impl StatTable {
    pub fn total(&self) -> BigInt {
        self.rows.values().sum()
    }

    pub fn get(&self, key: &[u32]) -> BigInt {
        self.rows.get(key).cloned().unwrap_or_default()
    }
}

/// Number of objects of length `n` whose statistic equals `value`.
pub fn count(family: &Family, n: u32, value: &[u32], engine: Engine) -> Result<BigInt> {
    family.validate()?;
    family.check_length(n)?;
    if value.len() != family.arity() {
        return Err(Error::invalid(format!(
            "{} expects {} statistic value(s), got {}",
            family.name(),
            family.arity(),
            value.len()
        )));
    }
    match engine {
        Engine::ClosedForm => closed_form(family, n, value),
        Engine::Transfer if !matches!(family, Family::HallRemmel { .. }) => {
            let (p, tracked) = family.word_setting()?;
            let spec = tracked
                .iter()
                .zip(value)
                .fold(ConstraintSpec::new(), |c, (&(b, st), &v)| {
                    c.require(b, st, v)
                });
            Ok(oracle::count_matching(family.alphabet(), n, &p, &spec)?.into())
        }
        _ => Ok(table(family, n, engine)?.get(value)),
    }
}

/// Full distribution of the statistic at length `n`.
pub fn table(family: &Family, n: u32, engine: Engine) -> Result<StatTable> {
    family.validate()?;
    family.check_length(n)?;
    let mut rows = match (family, engine) {
        (_, Engine::ClosedForm) => {
            let max = n.saturating_sub(1) as u64;
            let mut rows = BTreeMap::new();
            for total in 0..=max {
                for key in weak_compositions(total, family.arity()) {
                    let key: Vec<u32> = key.into_iter().map(|v| v as u32).collect();
                    rows.insert(key.clone(), closed_form(family, n, &key)?);
                }
            }
            rows
        }
        (Family::HallRemmel { rho, x, y }, Engine::Oracle) => {
            let rho: Vec<u64> = rho.iter().map(|&r| r as u64).collect();
            oracle::rearrangement_distribution(&rho, x, y)?
                .into_iter()
                .map(|(s, c)| (vec![s as u32], BigInt::from(c)))
                .collect()
        }
        (Family::HallRemmel { .. }, _) => {
            return Err(Error::invalid(format!(
                "engine '{engine}' does not apply to hall-remmel; use closed-form or oracle"
            )))
        }
        (_, Engine::Oracle | Engine::Transfer) => {
            let (p, tracked) = family.word_setting()?;
            let dist = if engine == Engine::Oracle {
                oracle::brute_distribution(family.alphabet(), n, &p)?
            } else {
                oracle::transfer_distribution(family.alphabet(), n, &p)?
            };
            let mut rows: BTreeMap<Vec<u32>, BigInt> = BTreeMap::new();
            for (sv, c) in dist.entries() {
                let key = tracked.iter().map(|&(b, st)| sv.get(b, st)).collect();
                *rows.entry(key).or_default() += BigInt::from(c.clone());
            }
            rows
        }
        (_, Engine::Series) => {
            let (p, tracked) = family.word_setting()?;
            let spec =
                tracked
                    .iter()
                    .try_fold(TrackingSpec::untracked(p.t()), |spec, &(b, st)| {
                        spec.track(
                            b,
                            if st == Stat::Lev {
                                Marker::Z
                            } else {
                                Marker::X
                            },
                        )
                    })?;
            let a = series::build_ak_series(family.alphabet(), &p, &spec, n as usize)?;
            a.coefficient(n as usize)
                .terms()
                .iter()
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect()
        }
    };
    rows.retain(|_, c| !c.is_zero());
    Ok(StatTable {
        labels: family.stat_labels(),
        rows,
    })
}

fn closed_form(family: &Family, n: u32, value: &[u32]) -> Result<BigInt> {
    let n64 = n as u64;
    let v = value[0] as u64;
    match family {
        Family::LevelsThreshold { k, t } => {
            formulas::count_levels_threshold(*k as u64, *t as u64, n64, v)
        }
        Family::LevelsBlocks { sizes } => {
            let sizes: Vec<u64> = sizes.iter().map(|&s| s as u64).collect();
            let targets: Vec<u64> = value.iter().map(|&s| s as u64).collect();
            formulas::count_levels_blocks(&sizes, n64, &targets)
        }
        Family::DesLe { k, t } => formulas::count_des_le(*k as u64, *t as u64, n64, v),
        Family::DesGt { k, t } => formulas::count_des_gt(*k as u64, *t as u64, n64, v),
        Family::DesMod { s, alphabet, r } => {
            Ok(formulas::count_des_mod(*s as u64, *alphabet as u64, *r as u64, n64, v)?.value)
        }
        Family::HallRemmel { rho, x, y } => {
            let rho: Vec<u64> = rho.iter().map(|&r| r as u64).collect();
            Ok(formulas::hall_remmel_count(&rho, x, y, v))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_engines(f: &Family, n: u32) -> Vec<StatTable> {
        Engine::ALL
            .iter()
            .map(|&e| table(f, n, e).unwrap())
            .collect()
    }

    #[test]
    fn engines_agree_on_small_tables() {
        let families = [
            Family::LevelsThreshold { k: 3, t: 2 },
            Family::LevelsBlocks { sizes: vec![1, 2] },
            Family::DesLe { k: 3, t: 1 },
            Family::DesGt { k: 3, t: 0 },
            Family::DesMod {
                s: 2,
                alphabet: 3,
                r: 1,
            },
        ];
        for f in &families {
            for n in 0..=4 {
                let tables = all_engines(f, n);
                for t in &tables[1..] {
                    assert_eq!(t, &tables[0], "{} n={n}", f.name());
                }
                assert_eq!(tables[0].total(), f.population(n));
            }
        }
    }

    #[test]
    fn table_examples() {
        let t = table(
            &Family::DesMod {
                s: 2,
                alphabet: 2,
                r: 2,
            },
            2,
            Engine::ClosedForm,
        )
        .unwrap();
        assert_eq!(t.get(&[0]), BigInt::from(3));
        assert_eq!(t.get(&[1]), BigInt::from(1));
        let t = table(&Family::LevelsThreshold { k: 2, t: 2 }, 2, Engine::Oracle).unwrap();
        assert_eq!(t.rows.len(), 2);
        assert_eq!(t.get(&[0]), BigInt::from(2));
        let t = table(&Family::DesLe { k: 4, t: 2 }, 0, Engine::Series).unwrap();
        assert_eq!(
            t.rows.into_iter().collect::<Vec<_>>(),
            vec![(vec![0], BigInt::from(1))]
        );
    }

    #[test]
    fn count_examples() {
        let f = Family::DesMod {
            s: 2,
            alphabet: 4,
            r: 1,
        };
        assert_eq!(
            count(&f, 2, &[1], Engine::ClosedForm).unwrap(),
            BigInt::from(2)
        );
        let f = Family::LevelsThreshold { k: 1, t: 1 };
        assert_eq!(
            count(&f, 3, &[2], Engine::ClosedForm).unwrap(),
            BigInt::from(1)
        );
        let f = Family::DesLe { k: 2, t: 2 };
        assert_eq!(count(&f, 2, &[1], Engine::Oracle).unwrap(), BigInt::from(1));
        assert_eq!(
            count(&f, 2, &[1], Engine::Transfer).unwrap(),
            BigInt::from(1)
        );
    }

    #[test]
    fn hall_remmel_engines() {
        let f = Family::HallRemmel {
            rho: vec![1, 2, 1],
            x: [2, 3].into(),
            y: [1, 2].into(),
        };
        let a = table(&f, 4, Engine::ClosedForm).unwrap();
        assert_eq!(a, table(&f, 4, Engine::Oracle).unwrap());
        assert_eq!(a.total(), BigInt::from(12));
        assert!(table(&f, 4, Engine::Series).is_err());
        assert!(table(&f, 5, Engine::Oracle).is_err());
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(table(&Family::DesLe { k: 2, t: 0 }, 2, Engine::Oracle).is_err());
        assert!(table(
            &Family::DesMod {
                s: 2,
                alphabet: 4,
                r: 3
            },
            2,
            Engine::Oracle
        )
        .is_err());
        assert!(count(
            &Family::LevelsBlocks { sizes: vec![1, 1] },
            2,
            &[0],
            Engine::Oracle
        )
        .is_err());
        assert!("quantum".parse::<Engine>().is_err());
    }
}
