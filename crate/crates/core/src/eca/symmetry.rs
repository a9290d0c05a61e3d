use std::collections::BTreeSet;

use super::rule::{parse_rule, RuleTable};
use crate::error::Result;

/// Left-right reflection: `F'(a, b, c) = F(c, b, a)`.
pub fn mirror(rule: &RuleTable) -> RuleTable {
    let mut table = [false; 8];
    for (idx, slot) in table.iter_mut().enumerate() {
        let (l, c, r) = (idx & 4 != 0, idx & 2 != 0, idx & 1 != 0);
        *slot = rule.output(r, c, l);
    }
    RuleTable::from_table(table)
}

/// Exchange of the two cell values: `F'(a, b, c) = 1 - F(1-a, 1-b, 1-c)`.
pub fn complement(rule: &RuleTable) -> RuleTable {
    let mut table = [false; 8];
    for (idx, slot) in table.iter_mut().enumerate() {
        let (l, c, r) = (idx & 4 != 0, idx & 2 != 0, idx & 1 != 0);
        *slot = !rule.output(!l, !c, !r);
    }
    RuleTable::from_table(table)
}

/// Orbit of a rule under mirror, complement and their composition.
pub fn rule_symmetries(rule_number: u32) -> Result<BTreeSet<u8>> {
    let rule = parse_rule(rule_number)?;
    Ok(orbit(&rule))
}

fn orbit(rule: &RuleTable) -> BTreeSet<u8> {
    let m = mirror(rule);
    let c = complement(rule);
    let mc = complement(&m);
    [rule.number(), m.number(), c.number(), mc.number()]
        .into_iter()
        .collect()
}

/// The 88 rules that are the smallest member of their symmetry orbit, ascending.
pub fn canonical_rules() -> Vec<u8> {
    (0..=255u8)
        .filter(|&n| orbit(&RuleTable::new(n)).first() == Some(&n))
        .collect()
}
