use super::tape::Tape;

/// Keep only black cells with at least one black neighbour.
///
/// Isolated ones are cleared; runs of two or more ones are kept whole.
/// Neighbours wrap around the row ends.
pub fn kink_filter(tape: &Tape) -> Tape {
    let width = tape.width();
    let mut out = Tape::zeros(width);
    if width == 0 {
        return out;
    }
    let words = tape.words();
    let n = words.len();
    let first_cell = words[0] & 1;
    let last_cell = u64::from(tape.get(width - 1));
    let last_pos = (width - 1) % 64;
    let dst = out.words_mut();
    for k in 0..n {
        let c = words[k];
        let left = (c << 1) | if k == 0 { last_cell } else { words[k - 1] >> 63 };
        let right = if k + 1 < n {
            (c >> 1) | (words[k + 1] << 63)
        } else {
            (c >> 1) | (first_cell << last_pos)
        };
        dst[k] = c & (left | right);
    }
    out.mask_tail();
    out
}
