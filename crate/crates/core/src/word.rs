//! Words over `[k]`, partitions of the alphabet into blocks, and the per-block
//! descent/rise/level/letter statistics of a single word.
//!
//! A pair `(a, b)` of adjacent letters is attributed to the block holding its
//! *first* letter `a`. Blocks are numbered from 1 in the public API.

use std::fmt;

use crate::error::{Error, Result};

pub type Letter = u32;

/// Relation between two adjacent letters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PairKind {
    Descent,
    Level,
    Rise,
}

impl PairKind {
    #[inline]
    pub fn of(a: Letter, b: Letter) -> PairKind {
        match a.cmp(&b) {
            std::cmp::Ordering::Greater => PairKind::Descent,
            std::cmp::Ordering::Equal => PairKind::Level,
            std::cmp::Ordering::Less => PairKind::Rise,
        }
    }
}

/// Classifies the adjacent pair `(a, b)` over the alphabet `[k]`.
pub fn classify_pair(a: Letter, b: Letter, k: u32) -> Result<PairKind> {
    check_letter(a, k)?;
    check_letter(b, k)?;
    Ok(PairKind::of(a, b))
}

fn check_letter(letter: Letter, k: u32) -> Result<()> {
    if letter == 0 || letter > k {
        return Err(Error::LetterOutOfRange { letter, k });
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    letters: Vec<Letter>,
    k: u32,
}

impl Word {
    pub fn new(letters: Vec<Letter>, k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::invalid("alphabet size must be positive"));
        }
        for &l in &letters {
            check_letter(l, k)?;
        }
        Ok(Word { letters, k })
    }

    pub fn empty(k: u32) -> Result<Self> {
        Word::new(Vec::new(), k)
    }

    /// Parses a word written as a string of decimal digits, e.g. `"2121"`.
    /// Only usable for alphabets with `k <= 9`.
    pub fn from_digits(digits: &str, k: u32) -> Result<Self> {
        let letters = digits
            .chars()
            .map(|c| {
                c.to_digit(10)
                    .ok_or_else(|| Error::invalid(format!("'{c}' is not a digit")))
            })
            .collect::<Result<Vec<_>>>()?;
        Word::new(letters, k)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn pairs(&self) -> impl Iterator<Item = (Letter, Letter)> + '_ {
        self.letters.windows(2).map(|w| (w[0], w[1]))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.k <= 9 {
            for l in &self.letters {
                write!(f, "{l}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
            write!(f, "{}", parts.join("."))
        }
    }
}

/// Letter-wise `l -> k + 1 - l`. Swaps descents and rises.
pub fn complement(w: &Word) -> Word {
    let k = w.k;
    Word {
        letters: w.letters.iter().map(|&l| k + 1 - l).collect(),
        k,
    }
}

/// Assignment of every letter of `[k]` to a block `1..=t`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BlockPartition {
    k: u32,
    t: u32,
    // 0-based block index for letter `l` at position `l - 1`
    block_of: Vec<u32>,
}

impl BlockPartition {
    /// Builds a partition from 1-based block labels, one per letter.
    /// The number of blocks is the largest label used.
    pub fn from_blocks(labels: &[u32]) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::invalid("partition must cover a non-empty alphabet"));
        }
        if let Some(&bad) = labels.iter().find(|&&b| b == 0) {
            return Err(Error::invalid(format!(
                "block labels are 1-based, got {bad}"
            )));
        }
        let t = *labels.iter().max().expect("non-empty");
        Ok(BlockPartition {
            k: labels.len() as u32,
            t,
            block_of: labels.iter().map(|&b| b - 1).collect(),
        })
    }

    /// Block 1 is `[t0]`, block 2 holds `t0+1..=k`. Either block may be empty.
    pub fn threshold(k: u32, t0: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::invalid("alphabet size must be positive"));
        }
        if t0 > k {
            return Err(Error::invalid(format!(
                "threshold {t0} exceeds alphabet size {k}"
            )));
        }
        Ok(BlockPartition {
            k,
            t: 2,
            block_of: (1..=k).map(|l| if l <= t0 { 0 } else { 1 }).collect(),
        })
    }

    /// Block `r` holds the letters congruent to `r` mod `s`; block `s` holds the multiples of `s`.
    pub fn mod_residue(k: u32, s: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::invalid("alphabet size must be positive"));
        }
        if s == 0 {
            return Err(Error::invalid("modulus must be positive"));
        }
        Ok(BlockPartition {
            k,
            t: s,
            block_of: (1..=k).map(|l| (l - 1) % s).collect(),
        })
    }

    /// Everything in one block.
    pub fn single(k: u32) -> Result<Self> {
        BlockPartition::mod_residue(k, 1)
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// Number of blocks.
    pub fn t(&self) -> u32 {
        self.t
    }

    /// 1-based block of `letter`.
    pub fn block(&self, letter: Letter) -> Result<u32> {
        check_letter(letter, self.k)?;
        Ok(self.block_of[(letter - 1) as usize] + 1)
    }

    #[inline]
    pub(crate) fn block_index(&self, letter: Letter) -> usize {
        self.block_of[(letter - 1) as usize] as usize
    }

    /// 1-based block labels, one per letter.
    pub fn labels(&self) -> Vec<u32> {
        self.block_of.iter().map(|b| b + 1).collect()
    }

    /// `|N_i ∩ [k]|` for every block.
    pub fn block_sizes(&self) -> Vec<u32> {
        let mut sizes = vec![0; self.t as usize];
        for &b in &self.block_of {
            sizes[b as usize] += 1;
        }
        sizes
    }

    pub fn letters_in_block(&self, block: u32) -> Result<Vec<Letter>> {
        self.check_block(block)?;
        Ok((1..=self.k)
            .filter(|&l| self.block_index(l) + 1 == block as usize)
            .collect())
    }

    pub(crate) fn check_block(&self, block: u32) -> Result<()> {
        if block == 0 || block > self.t {
            return Err(Error::UnknownBlock {
                block,
                blocks: self.t,
            });
        }
        Ok(())
    }
}

/// Which statistic of a block is meant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Stat {
    Des,
    Ris,
    Lev,
    Cnt,
}

impl Stat {
    pub const ALL: [Stat; 4] = [Stat::Des, Stat::Ris, Stat::Lev, Stat::Cnt];

    pub fn name(self) -> &'static str {
        match self {
            Stat::Des => "des",
            Stat::Ris => "ris",
            Stat::Lev => "lev",
            Stat::Cnt => "cnt",
        }
    }
}

impl std::str::FromStr for Stat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "des" => Ok(Stat::Des),
            "ris" => Ok(Stat::Ris),
            "lev" => Ok(Stat::Lev),
            "cnt" => Ok(Stat::Cnt),
            other => Err(Error::invalid(format!("unknown statistic '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BlockStats {
    pub des: u32,
    pub ris: u32,
    pub lev: u32,
    pub cnt: u32,
}

impl BlockStats {
    pub fn get(&self, stat: Stat) -> u32 {
        match stat {
            Stat::Des => self.des,
            Stat::Ris => self.ris,
            Stat::Lev => self.lev,
            Stat::Cnt => self.cnt,
        }
    }

    pub(crate) fn get_mut(&mut self, stat: Stat) -> &mut u32 {
        match stat {
            Stat::Des => &mut self.des,
            Stat::Ris => &mut self.ris,
            Stat::Lev => &mut self.lev,
            Stat::Cnt => &mut self.cnt,
        }
    }

    #[inline]
    pub(crate) fn bump_pair(&mut self, kind: PairKind) {
        match kind {
            PairKind::Descent => self.des += 1,
            PairKind::Level => self.lev += 1,
            PairKind::Rise => self.ris += 1,
        }
    }
}

/// Per-block `(des, ris, lev, cnt)` of a word.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StatVector {
    blocks: Vec<BlockStats>,
}

impl StatVector {
    pub fn zero(t: u32) -> Self {
        StatVector {
            blocks: vec![BlockStats::default(); t as usize],
        }
    }

    pub fn from_blocks(blocks: Vec<BlockStats>) -> Self {
        StatVector { blocks }
    }

    pub fn t(&self) -> u32 {
        self.blocks.len() as u32
    }

    /// Statistics of 1-based block `i`. Panics when `i` is out of range.
    pub fn block(&self, i: u32) -> &BlockStats {
        &self.blocks[(i - 1) as usize]
    }

    pub fn blocks(&self) -> &[BlockStats] {
        &self.blocks
    }

    pub(crate) fn blocks_mut(&mut self) -> &mut [BlockStats] {
        &mut self.blocks
    }

    pub fn get(&self, block: u32, stat: Stat) -> u32 {
        self.block(block).get(stat)
    }

    pub fn pair_total(&self) -> u32 {
        self.blocks.iter().map(|b| b.des + b.ris + b.lev).sum()
    }

    pub fn letter_total(&self) -> u32 {
        self.blocks.iter().map(|b| b.cnt).sum()
    }
}

impl fmt::Display for StatVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|b| format!("({},{},{},{})", b.des, b.ris, b.lev, b.cnt))
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

pub fn stat_vector(w: &Word, p: &BlockPartition) -> Result<StatVector> {
    if w.k != p.k {
        return Err(Error::AlphabetMismatch {
            word_k: w.k,
            partition_k: p.k,
        });
    }
    Ok(stat_vector_unchecked(&w.letters, p))
}

pub(crate) fn stat_vector_unchecked(letters: &[Letter], p: &BlockPartition) -> StatVector {
    let mut sv = StatVector::zero(p.t);
    for &l in letters {
        sv.blocks[p.block_index(l)].cnt += 1;
    }
    for pair in letters.windows(2) {
        sv.blocks[p.block_index(pair[0])].bump_pair(PairKind::of(pair[0], pair[1]));
    }
    sv
}
