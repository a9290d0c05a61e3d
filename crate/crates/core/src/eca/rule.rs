use std::fmt;

use crate::error::{Error, Result};

/// Local update map of an elementary cellular automaton.
///
/// Entry `4*l + 2*c + r` holds the new value of a cell whose left
/// neighbour, own value and right neighbour are `l`, `c`, `r`. This is the
/// usual Wolfram encoding: bit `4*l + 2*c + r` of the rule number.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct RuleTable {
    number: u8,
    table: [bool; 8],
}

/// Decode a rule number into its update table.
pub fn parse_rule(rule_number: u32) -> Result<RuleTable> {
    let number = u8::try_from(rule_number).map_err(|_| Error::RuleOutOfRange(rule_number))?;
    Ok(RuleTable::new(number))
}

impl RuleTable {
    pub fn new(number: u8) -> Self {
        let mut table = [false; 8];
        for (idx, slot) in table.iter_mut().enumerate() {
            *slot = (number >> idx) & 1 == 1;
        }
        RuleTable { number, table }
    }

    /// Build a rule from an explicit table, indexed by `4*l + 2*c + r`.
    pub fn from_table(table: [bool; 8]) -> Self {
        let number = table
            .iter()
            .enumerate()
            .fold(0u8, |acc, (idx, &bit)| acc | (u8::from(bit) << idx));
        RuleTable { number, table }
    }

    pub fn number(&self) -> u8 {
        self.number
    }

    pub fn table(&self) -> &[bool; 8] {
        &self.table
    }

    /// Re-encode the table as a rule number, neighbourhoods ordered 111 down to 000.
    pub fn encode(&self) -> u8 {
        Self::from_table(self.table).number
    }

    #[inline]
    pub fn output(&self, left: bool, centre: bool, right: bool) -> bool {
        self.table[(usize::from(left) << 2) | (usize::from(centre) << 1) | usize::from(right)]
    }

    /// Apply the rule to 64 cells at once. Bit `i` of each argument is the
    /// left neighbour, the cell itself and the right neighbour of cell `i`.
    #[inline]
    pub fn apply_words(&self, left: u64, centre: u64, right: u64) -> u64 {
        let mut out = 0u64;
        for (idx, &bit) in self.table.iter().enumerate() {
            if !bit {
                continue;
            }
            let l = if idx & 4 != 0 { left } else { !left };
            let c = if idx & 2 != 0 { centre } else { !centre };
            let r = if idx & 1 != 0 { right } else { !right };
            out |= l & c & r;
        }
        out
    }
}

impl fmt::Debug for RuleTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Rule {} ({:08b})", self.number, self.number)
    }
}

impl fmt::Display for RuleTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.number)
    }
}
