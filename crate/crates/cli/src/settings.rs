//! Experiment settings assembled from defaults, a `key = value` file and
//! command-line flags, applied in that order.

use std::path::PathBuf;

use ecaspectrum::eca::canonical_rules;
use ecaspectrum::harness::sampling_schedule;
use ecaspectrum::{ExperimentConfig, FuturesEstimator};

/// Keys accepted in a config file. Each one mirrors the `run` flag of the
/// same name; underscores may be used in place of dashes.
pub const KEYS: &[&str] = &[
    "rules",
    "width",
    "tmax",
    "window-l",
    "seeds",
    "chi2-alpha",
    "schedule",
    "out",
    "format",
    "classical",
    "kink-filter",
    "pbm",
    "futures",
    "threads",
];

#[derive(Clone, Debug, Default)]
pub struct Settings {
    config: ExperimentConfig,
    schedule: Option<Vec<usize>>,
}

impl Settings {
    /// Apply one `key = value` setting.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), String> {
        let key = key.trim().replace('_', "-");
        let value = value.trim();
        let c = &mut self.config;
        match key.as_str() {
            "rules" => c.rules = parse_rules(value)?,
            "width" => c.width = parse_num(&key, value)?,
            "tmax" | "t-max" => c.t_max = parse_num(&key, value)?,
            "window-l" => c.window_l = parse_num(&key, value)?,
            "seeds" => c.seeds = parse_list(value)?,
            "chi2-alpha" => c.chi2_alpha = parse_num(&key, value)?,
            "schedule" => self.schedule = Some(parse_steps(value)?),
            "out" => c.output.dir = PathBuf::from(value),
            "format" => self.set_formats(value)?,
            "classical" => c.classical = parse_bool(&key, value)?,
            "kink-filter" => c.kink_filter = parse_bool(&key, value)?,
            "pbm" => c.output.pbm = parse_bool(&key, value)?,
            "futures" => c.futures = value.parse::<FuturesEstimator>().map_err(|e| e.to_string())?,
            "threads" => c.threads = Some(parse_num(&key, value)?),
            other => {
                return Err(format!(
                    "unknown setting {other:?}; expected one of {}",
                    KEYS.join(", ")
                ))
            }
        }
        Ok(())
    }

    /// Apply every line of a config file. Blank lines and lines starting with
    /// `#` are ignored.
    pub fn apply_file(&mut self, text: &str) -> Result<(), String> {
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| format!("line {}: expected key = value, got {line:?}", n + 1))?;
            self.set(key, value).map_err(|e| format!("line {}: {e}", n + 1))?;
        }
        Ok(())
    }

    fn set_formats(&mut self, value: &str) -> Result<(), String> {
        let out = &mut self.config.output;
        out.csv = false;
        out.json = false;
        out.svg = false;
        for item in value.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            match item {
                "csv" => out.csv = true,
                "json" => out.json = true,
                "svg" => out.svg = true,
                "pbm" => out.pbm = true,
                other => return Err(format!("unknown output format {other:?}")),
            }
        }
        Ok(())
    }

    /// Final configuration. Without an explicit schedule, the default one for
    /// `t_max` is used.
    pub fn finish(self) -> Result<ExperimentConfig, String> {
        let mut config = self.config;
        config.schedule = self.schedule.unwrap_or_else(|| sampling_schedule(config.t_max));
        config.validate().map_err(|e| e.to_string())?;
        Ok(config)
    }
}

fn parse_num<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, String>
where
    T::Err: std::fmt::Display,
{
    value
        .parse()
        .map_err(|e| format!("{key}: cannot parse {value:?}: {e}"))
}

fn parse_bool(key: &str, value: &str) -> Result<bool, String> {
    match value {
        "true" | "yes" | "on" | "1" => Ok(true),
        "false" | "no" | "off" | "0" => Ok(false),
        _ => Err(format!("{key}: expected true or false, got {value:?}")),
    }
}

/// Comma-separated integers; `a-b` expands to an inclusive range.
pub fn parse_list(value: &str) -> Result<Vec<u64>, String> {
    let mut out = Vec::new();
    for item in value.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        match item.split_once('-') {
            Some((a, b)) => {
                let a: u64 = parse_num("range start", a.trim())?;
                let b: u64 = parse_num("range end", b.trim())?;
                if a > b {
                    return Err(format!("empty range {item:?}"));
                }
                out.extend(a..=b);
            }
            None => out.push(parse_num("list item", item)?),
        }
    }
    if out.is_empty() {
        return Err(format!("empty list {value:?}"));
    }
    Ok(out)
}

fn parse_steps(value: &str) -> Result<Vec<usize>, String> {
    parse_list(value)?
        .into_iter()
        .map(|t| usize::try_from(t).map_err(|_| format!("timestep {t} too large")))
        .collect()
}

/// `all-canonical`, `all`, or a list of rule numbers.
pub fn parse_rules(value: &str) -> Result<Vec<u8>, String> {
    let mut rules = match value {
        "all-canonical" | "canonical" => canonical_rules(),
        "all" => (0..=255).collect(),
        list => parse_list(list)?
            .into_iter()
            .map(|r| u8::try_from(r).map_err(|_| format!("rule {r} outside 0..=255")))
            .collect::<Result<_, _>>()?,
    };
    rules.sort_unstable();
    rules.dedup();
    Ok(rules)
}
