/// Sampled timesteps: 1..=9, then 10, 20, ..., 90, 100, 200, ... up to
/// `t_max`, with `t_max` itself always included.
pub fn sampling_schedule(t_max: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut step = 1usize;
    'outer: loop {
        for k in 1..=9 {
            let Some(t) = step.checked_mul(k) else {
                break 'outer;
            };
            if t > t_max {
                break 'outer;
            }
            out.push(t);
        }
        match step.checked_mul(10) {
            Some(s) => step = s,
            None => break,
        }
    }
    if out.last() != Some(&t_max) && t_max >= 1 {
        out.push(t_max);
    }
    out
}
