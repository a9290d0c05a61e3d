use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::rule::RuleTable;
use super::tape::{words_for, Tape};
use crate::error::{Error, Result};

/// Upper bound on the number of cells in an extended tape (2^40).
pub const MAX_CELLS: usize = 1 << 40;

/// The generator behind every seeded initial condition.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// One synchronous update on a ring of `tape.width()` cells.
pub fn step_periodic(tape: &Tape, rule: &RuleTable) -> Tape {
    let mut out = Tape::zeros(tape.width());
    step_periodic_into(tape, &mut out, rule);
    out
}

/// Wordwise periodic update of `src` into `dst`; both must share a width.
pub fn step_periodic_into(src: &Tape, dst: &mut Tape, rule: &RuleTable) {
    let width = src.width();
    assert_eq!(width, dst.width(), "source and destination widths differ");
    if width == 0 {
        return;
    }
    let words = src.words();
    let n = words.len();
    let first_cell = words[0] & 1;
    let last_cell = (words[n - 1] >> ((width - 1) % 64)) & 1;
    let last_pos = (width - 1) % 64;
    let out = dst.words_mut();

    for k in 0..n {
        let c = words[k];
        let carry_in = if k == 0 { last_cell } else { words[k - 1] >> 63 };
        let left = (c << 1) | carry_in;
        let right = if k + 1 < n {
            (c >> 1) | (words[k + 1] << 63)
        } else {
            // last (possibly partial) word: the cell after width-1 is cell 0
            (c >> 1) | (first_cell << last_pos)
        };
        out[k] = rule.apply_words(left, c, right);
    }
    dst.mask_tail();
}

/// Cell-by-cell periodic update. Slow; kept as a reference for the
/// wordwise evolver.
pub fn step_periodic_naive(tape: &Tape, rule: &RuleTable) -> Tape {
    let w = tape.width();
    let bits: Vec<bool> = (0..w)
        .map(|i| rule.output(tape.get((i + w - 1) % w), tape.get(i), tape.get((i + 1) % w)))
        .collect();
    Tape::from_bits(&bits)
}

/// Seeded initial row of `width` cells: the first `ceil(width / 64)` words
/// drawn from the run's generator.
pub fn seeded_initial(width: usize, seed: u64) -> Tape {
    let mut rng = seeded_rng(seed);
    Tape::random(width, &mut rng)
}

/// Surround `centre` with `pad` random cells on each side.
///
/// The generator first skips the words that [`seeded_initial`] would have
/// consumed for the centre, then draws pad cells outward from the centre,
/// alternating one word for the left side and one for the right. Cells at
/// distance `d` from the centre therefore do not depend on `pad`, so runs with
/// different padding agree on every cell they share.
pub fn pad_seeded(centre: &Tape, pad: usize, seed: u64) -> Result<Tape> {
    let total = extended_width(centre.width(), pad)?;
    let mut rng = seeded_rng(seed);
    for _ in 0..words_for(centre.width()) {
        rng.next_u64();
    }
    let mut left = Tape::zeros(pad);
    let mut right = Tape::zeros(pad);
    for chunk in 0..words_for(pad) {
        let lw = rng.next_u64();
        let rw = rng.next_u64();
        for b in 0..64 {
            let d = chunk * 64 + b;
            if d >= pad {
                break;
            }
            left.set(pad - 1 - d, (lw >> b) & 1 == 1);
            right.set(d, (rw >> b) & 1 == 1);
        }
    }
    let out = Tape::concat(&[&left, centre, &right]);
    debug_assert_eq!(out.width(), total);
    Ok(out)
}

fn extended_width(width: usize, pad: usize) -> Result<usize> {
    pad.checked_mul(2)
        .and_then(|p| p.checked_add(width))
        .filter(|&w| w <= MAX_CELLS)
        .ok_or(Error::TapeTooLarge { width, t_max: pad })
}

/// Rows of an open-boundary run, `rows[t - 1]` being the state after `t`
/// updates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trajectory {
    pub rows: Vec<Tape>,
    pub width: usize,
    pub rule_number: u8,
    pub seed: u64,
}

impl Trajectory {
    /// Row at timestep `t` (1-based).
    pub fn row(&self, t: usize) -> Option<&Tape> {
        t.checked_sub(1).and_then(|i| self.rows.get(i))
    }

    pub fn t_max(&self) -> usize {
        self.rows.len()
    }
}

/// Streaming open-boundary evolution.
///
/// A width-`W` row is embedded in a ring of `W + 2 * pad` cells; only the
/// centre `W` cells are reported. With `pad >= t_max`, no wrap-around
/// influence reaches the centre within `t_max` steps, so the reported rows
/// are those of an unbounded tape with the same initial cells.
pub struct Evolver {
    rule: RuleTable,
    current: Tape,
    scratch: Tape,
    width: usize,
    pad: usize,
    t: usize,
    t_max: usize,
}

impl Evolver {
    pub fn new(initial: &Tape, rule: RuleTable, t_max: usize, pad: usize, seed: u64) -> Result<Self> {
        if initial.is_empty() {
            return Err(Error::Domain("initial tape must be non-empty".into()));
        }
        if t_max == 0 {
            return Err(Error::Domain("t_max must be at least 1".into()));
        }
        if pad < t_max {
            return Err(Error::Domain(format!(
                "padding {pad} is smaller than t_max {t_max}; boundary effects would reach the centre"
            )));
        }
        let current = pad_seeded(initial, pad, seed)?;
        let scratch = Tape::zeros(current.width());
        Ok(Evolver {
            rule,
            current,
            scratch,
            width: initial.width(),
            pad,
            t: 0,
            t_max,
        })
    }

    /// Seeded centre and pads from one generator stream.
    pub fn seeded(width: usize, rule: RuleTable, t_max: usize, seed: u64) -> Result<Self> {
        if width == 0 {
            return Err(Error::Domain("width must be at least 1".into()));
        }
        extended_width(width, t_max)?;
        Evolver::new(&seeded_initial(width, seed), rule, t_max, t_max, seed)
    }

    /// Timestep of the most recently produced row (0 before the first step).
    pub fn t(&self) -> usize {
        self.t
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// Advance one step and return the new centre row, or `None` once
    /// `t_max` has been reached.
    pub fn step(&mut self) -> Option<Tape> {
        self.advance().then(|| self.centre())
    }

    /// Advance one step without extracting the centre row.
    pub fn advance(&mut self) -> bool {
        if self.t >= self.t_max {
            return false;
        }
        step_periodic_into(&self.current, &mut self.scratch, &self.rule);
        std::mem::swap(&mut self.current, &mut self.scratch);
        self.t += 1;
        true
    }

    /// Centre `W` cells of the current state.
    pub fn centre(&self) -> Tape {
        self.current.slice(self.pad, self.width)
    }
}

impl Iterator for Evolver {
    type Item = Tape;

    fn next(&mut self) -> Option<Tape> {
        self.step()
    }
}

/// Evolve `initial` for `t_max` steps with open boundaries.
///
/// The initial row is padded with `t_max` seeded random cells on each side.
pub fn run_open_boundary(initial: &Tape, rule: &RuleTable, t_max: usize, seed: u64) -> Result<Trajectory> {
    run_open_boundary_padded(initial, rule, t_max, t_max, seed)
}

/// As [`run_open_boundary`] with an explicit pad width (`pad >= t_max`).
pub fn run_open_boundary_padded(
    initial: &Tape,
    rule: &RuleTable,
    t_max: usize,
    pad: usize,
    seed: u64,
) -> Result<Trajectory> {
    let evolver = Evolver::new(initial, *rule, t_max, pad, seed)?;
    Ok(Trajectory {
        rows: evolver.collect(),
        width: initial.width(),
        rule_number: rule.number(),
        seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eca::rule::parse_rule;

    #[test]
    fn rule_zero_clears_everything() {
        let t: Tape = "1101".parse().unwrap();
        assert_eq!(step_periodic(&t, &parse_rule(0).unwrap()).to_string(), "0000");
    }

    #[test]
    fn identity_rule_keeps_tape() {
        let t: Tape = "0110".parse().unwrap();
        assert_eq!(step_periodic(&t, &parse_rule(204).unwrap()), t);
    }

    #[test]
    fn rule_110_single_cell() {
        let t: Tape = "00010000".parse().unwrap();
        assert_eq!(
            step_periodic(&t, &parse_rule(110).unwrap()).to_string(),
            "00110000"
        );
    }

    #[test]
    fn wrap_around_edges() {
        // rule 170: new cell = right neighbour, i.e. shift left on the ring
        let t: Tape = "1000001".parse().unwrap();
        assert_eq!(
            step_periodic(&t, &parse_rule(170).unwrap()).to_string(),
            "0000011"
        );
        // rule 240: new cell = left neighbour
        assert_eq!(
            step_periodic(&t, &parse_rule(240).unwrap()).to_string(),
            "1100000"
        );
    }

    #[test]
    fn wordwise_matches_naive_at_awkward_widths() {
        let mut rng = seeded_rng(11);
        for width in [1, 2, 3, 63, 64, 65, 127, 128, 129, 200] {
            let tape = Tape::random(width, &mut rng);
            for rule in [30u8, 54, 90, 110, 150, 18, 170, 240] {
                let rule = RuleTable::new(rule);
                assert_eq!(
                    step_periodic(&tape, &rule),
                    step_periodic_naive(&tape, &rule),
                    "width {width}, {rule:?}"
                );
            }
        }
    }

    #[test]
    fn open_boundary_rule_zero() {
        let init: Tape = "1011".parse().unwrap();
        let traj = run_open_boundary(&init, &parse_rule(0).unwrap(), 2, 3).unwrap();
        let rows: Vec<String> = traj.rows.iter().map(|r| r.to_string()).collect();
        assert_eq!(rows, ["0000", "0000"]);
    }

    #[test]
    fn open_boundary_identity() {
        let init: Tape = "1010".parse().unwrap();
        let traj = run_open_boundary(&init, &parse_rule(204).unwrap(), 3, 9).unwrap();
        assert_eq!(traj.t_max(), 3);
        assert!(traj.rows.iter().all(|r| r.to_string() == "1010"));
    }

    #[test]
    fn rule_30_agrees_across_paddings() {
        let rule = parse_rule(30).unwrap();
        let init = seeded_initial(8, 42);
        let a = run_open_boundary_padded(&init, &rule, 4, 4, 42).unwrap();
        let b = run_open_boundary_padded(&init, &rule, 4, 5, 42).unwrap();
        let c = run_open_boundary_padded(&init, &rule, 4, 8, 42).unwrap();
        assert_eq!(a.rows, b.rows);
        assert_eq!(a.rows, c.rows);
    }

    #[test]
    fn centre_independent_of_t_max() {
        let e1 = Evolver::seeded(100, RuleTable::new(110), 5, 77).unwrap();
        let e2 = Evolver::seeded(100, RuleTable::new(110), 50, 77).unwrap();
        assert_eq!(e1.centre(), e2.centre());
        let r1: Vec<Tape> = e1.collect();
        let r2: Vec<Tape> = e2.take(5).collect();
        assert_eq!(r1, r2);
    }

    #[test]
    fn rejects_bad_arguments() {
        let init: Tape = "1".parse().unwrap();
        assert!(Evolver::new(&init, RuleTable::new(0), 0, 0, 1).is_err());
        assert!(Evolver::new(&init, RuleTable::new(0), 5, 4, 1).is_err());
        assert!(Evolver::new(&Tape::zeros(0), RuleTable::new(0), 1, 1, 1).is_err());
        assert!(matches!(
            Evolver::seeded(10, RuleTable::new(0), usize::MAX / 2, 1),
            Err(Error::TapeTooLarge { .. })
        ));
    }
}
