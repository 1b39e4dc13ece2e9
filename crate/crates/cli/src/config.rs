//! Flat key = value experiment configuration.
//!
//! One file holds one or more `[experiment]` sections; each section drives a
//! sweep over the listed evolution-operator members with shared ring size,
//! time range, angles, and initial coin. Lines starting with `#` are
//! comments.

use bakerwalk_core::{
    build_baker_applier, BakerSpec, FloquetAngles, InitialCoinSpec, QubitState,
};

use crate::RunError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExperimentKind {
    Entropy,
    Variance,
    Wigner,
}

impl ExperimentKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            ExperimentKind::Entropy => "entropy",
            ExperimentKind::Variance => "variance",
            ExperimentKind::Wigner => "wigner",
        }
    }
}

/// Recording cadence. `Auto` records every step up to t = 200 and every
/// fifth step beyond; the final time is always recorded.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StrideRule {
    Auto,
    Every(u64),
}

impl StrideRule {
    pub fn record_times(&self, t_max: u64) -> Vec<u64> {
        let mut times: Vec<u64> = (0..=t_max)
            .filter(|&t| match *self {
                StrideRule::Auto => t <= 200 || t % 5 == 0,
                StrideRule::Every(s) => t % s == 0,
            })
            .collect();
        if times.last() != Some(&t_max) {
            times.push(t_max);
        }
        times
    }
}

/// Per-qubit initial coin choice, reused across the register (and carried
/// over to general-even members through the truncated product pattern).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoinChoice {
    Zero,
    PlusI,
    Plus3Pi4,
}

impl CoinChoice {
    pub fn qubit_state(&self) -> QubitState {
        match self {
            CoinChoice::Zero => QubitState::Zero,
            CoinChoice::PlusI => QubitState::PlusI,
            CoinChoice::Plus3Pi4 => QubitState::Plus3Pi4,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            CoinChoice::Zero => "zero",
            CoinChoice::PlusI => "plus_i",
            CoinChoice::Plus3Pi4 => "plus_3pi4",
        }
    }
}

/// One member of a sweep: a qubit-register operator `q<N>n<n>` or a
/// general-even operator `g<D>`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MemberId {
    Qubit { qubits: usize, shifted: usize },
    GeneralEven { dim: usize },
}

impl MemberId {
    pub fn parse(token: &str) -> Result<Self, String> {
        if let Some(rest) = token.strip_prefix('q') {
            let (n_str, s_str) = rest
                .split_once('n')
                .ok_or_else(|| format!("member `{token}`: expected q<N>n<n>"))?;
            let qubits = n_str
                .parse::<usize>()
                .map_err(|_| format!("member `{token}`: bad qubit count"))?;
            let shifted = s_str
                .parse::<usize>()
                .map_err(|_| format!("member `{token}`: bad shift count"))?;
            Ok(MemberId::Qubit { qubits, shifted })
        } else if let Some(rest) = token.strip_prefix('g') {
            let dim = rest
                .parse::<usize>()
                .map_err(|_| format!("member `{token}`: bad dimension"))?;
            Ok(MemberId::GeneralEven { dim })
        } else {
            Err(format!("member `{token}`: expected q<N>n<n> or g<D>"))
        }
    }

    pub fn label(&self) -> String {
        match self {
            MemberId::Qubit { qubits, shifted } => format!("q{qubits}n{shifted}"),
            MemberId::GeneralEven { dim } => format!("g{dim}"),
        }
    }

    pub fn baker_spec(&self, angles: FloquetAngles) -> BakerSpec {
        match *self {
            MemberId::Qubit { qubits, shifted } => {
                BakerSpec::qubit_register(qubits, shifted, angles)
            }
            MemberId::GeneralEven { dim } => BakerSpec::general_even(dim, angles),
        }
    }

    pub fn coin_spec(&self, coin: CoinChoice) -> InitialCoinSpec {
        match *self {
            MemberId::Qubit { qubits, .. } => {
                InitialCoinSpec::PerQubit(vec![coin.qubit_state(); qubits])
            }
            MemberId::GeneralEven { dim } => {
                InitialCoinSpec::Repeated { state: coin.qubit_state(), dim }
            }
        }
    }
}

/// Extra observables recorded alongside an experiment's primary one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtraObservable {
    VonNeumann,
    Variance,
}

/// One `[experiment]` section: a full sweep specification.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub name: String,
    pub kind: ExperimentKind,
    pub ring_size: usize,
    pub t_max: u64,
    pub stride: StrideRule,
    pub angles: FloquetAngles,
    pub coin: CoinChoice,
    pub members: Vec<MemberId>,
    /// Analysis window for the summary estimators; per-member defaults when
    /// absent.
    pub window: Option<(u64, u64)>,
    pub extras: Vec<ExtraObservable>,
    pub dump_grids: bool,
}

impl ExperimentConfig {
    /// Echo the section in the same key = value format it is parsed from.
    pub fn echo(&self) -> String {
        let mut out = String::new();
        out.push_str("[experiment]\n");
        out.push_str(&format!("name = {}\n", self.name));
        out.push_str(&format!("kind = {}\n", self.kind.as_str()));
        out.push_str(&format!("ring_size = {}\n", self.ring_size));
        out.push_str(&format!("t_max = {}\n", self.t_max));
        match self.stride {
            StrideRule::Auto => out.push_str("stride = auto\n"),
            StrideRule::Every(s) => out.push_str(&format!("stride = {s}\n")),
        }
        out.push_str(&format!("eta = {}\n", self.angles.eta));
        out.push_str(&format!("kappa = {}\n", self.angles.kappa));
        out.push_str(&format!("coin = {}\n", self.coin.as_str()));
        let members: Vec<String> = self.members.iter().map(|m| m.label()).collect();
        out.push_str(&format!("members = {}\n", members.join(" ")));
        if let Some((a, b)) = self.window {
            out.push_str(&format!("window = {a} {b}\n"));
        }
        if !self.extras.is_empty() {
            let extras: Vec<&str> = self
                .extras
                .iter()
                .map(|e| match e {
                    ExtraObservable::VonNeumann => "von_neumann",
                    ExtraObservable::Variance => "variance",
                })
                .collect();
            out.push_str(&format!("observables = {}\n", extras.join(" ")));
        }
        if self.dump_grids {
            out.push_str("dump_grids = true\n");
        }
        out
    }
}

fn config_err(line_no: usize, msg: impl Into<String>) -> RunError {
    RunError::Config(format!("config line {line_no}: {}", msg.into()))
}

struct SectionBuilder {
    start_line: usize,
    keys: Vec<(usize, String, String)>,
}

impl SectionBuilder {
    fn take(&mut self, key: &str) -> Option<(usize, String)> {
        let idx = self.keys.iter().position(|(_, k, _)| k == key)?;
        let (line, _, value) = self.keys.remove(idx);
        Some((line, value))
    }

    fn build(mut self) -> Result<ExperimentConfig, RunError> {
        let require = |opt: Option<(usize, String)>, key: &str, start: usize| {
            opt.ok_or_else(|| config_err(start, format!("missing required key `{key}`")))
        };
        let start = self.start_line;

        let (line, name) = require(self.take("name"), "name", start)?;
        if name.is_empty()
            || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-')
        {
            return Err(config_err(line, "name must be non-empty [A-Za-z0-9_-]"));
        }

        let (line, kind_str) = require(self.take("kind"), "kind", start)?;
        let kind = match kind_str.as_str() {
            "entropy" => ExperimentKind::Entropy,
            "variance" => ExperimentKind::Variance,
            "wigner" => ExperimentKind::Wigner,
            other => {
                return Err(config_err(
                    line,
                    format!("unknown kind `{other}` (entropy | variance | wigner)"),
                ))
            }
        };

        let (line, ring_str) = require(self.take("ring_size"), "ring_size", start)?;
        let ring_size: usize = ring_str
            .parse()
            .map_err(|_| config_err(line, "ring_size must be a positive integer"))?;
        if ring_size < 2 {
            return Err(config_err(line, "ring_size must be at least 2"));
        }

        let (line, t_str) = require(self.take("t_max"), "t_max", start)?;
        let t_max: u64 =
            t_str.parse().map_err(|_| config_err(line, "t_max must be a non-negative integer"))?;

        let stride = match self.take("stride") {
            None => StrideRule::Every(1),
            Some((_, s)) if s == "auto" => StrideRule::Auto,
            Some((line, s)) => {
                let v: u64 =
                    s.parse().map_err(|_| config_err(line, "stride must be `auto` or an integer"))?;
                if v == 0 {
                    return Err(config_err(line, "stride must be at least 1"));
                }
                StrideRule::Every(v)
            }
        };

        let parse_angle = |opt: Option<(usize, String)>, key: &str| -> Result<f64, RunError> {
            match opt {
                None => Ok(0.0),
                Some((line, s)) => {
                    let v: f64 = s
                        .parse()
                        .map_err(|_| config_err(line, format!("{key} must be a real number")))?;
                    if !v.is_finite() {
                        return Err(config_err(line, format!("{key} must be finite")));
                    }
                    Ok(v)
                }
            }
        };
        let eta = parse_angle(self.take("eta"), "eta")?;
        let kappa = parse_angle(self.take("kappa"), "kappa")?;

        let coin = match self.take("coin") {
            None => CoinChoice::PlusI,
            Some((line, s)) => match s.as_str() {
                "zero" => CoinChoice::Zero,
                "plus_i" => CoinChoice::PlusI,
                "plus_3pi4" => CoinChoice::Plus3Pi4,
                other => {
                    return Err(config_err(
                        line,
                        format!("unknown coin `{other}` (zero | plus_i | plus_3pi4)"),
                    ))
                }
            },
        };

        let (line, members_str) = require(self.take("members"), "members", start)?;
        let mut members = Vec::new();
        for token in members_str.replace(',', " ").split_whitespace() {
            let member = MemberId::parse(token).map_err(|e| config_err(line, e))?;
            // surface inconsistent operator parameters as config errors
            build_baker_applier(&member.baker_spec(FloquetAngles::new(eta, kappa)))
                .map_err(|e| config_err(line, format!("member `{token}`: {e}")))?;
            members.push(member);
        }
        if members.is_empty() {
            return Err(config_err(line, "members list is empty"));
        }

        let window = match self.take("window") {
            None => None,
            Some((line, s)) => {
                let parts: Vec<&str> = s.split_whitespace().collect();
                if parts.len() != 2 {
                    return Err(config_err(line, "window takes two integers: start end"));
                }
                let a: u64 =
                    parts[0].parse().map_err(|_| config_err(line, "bad window start"))?;
                let b: u64 = parts[1].parse().map_err(|_| config_err(line, "bad window end"))?;
                if a > b {
                    return Err(config_err(line, "window start must not exceed its end"));
                }
                Some((a, b))
            }
        };

        let extras = match self.take("observables") {
            None => Vec::new(),
            Some((line, s)) => {
                let mut extras = Vec::new();
                for token in s.replace(',', " ").split_whitespace() {
                    let extra = match (token, kind) {
                        ("von_neumann", ExperimentKind::Entropy) => ExtraObservable::VonNeumann,
                        ("variance", ExperimentKind::Variance) => ExtraObservable::Variance,
                        _ => {
                            return Err(config_err(
                                line,
                                format!("observable `{token}` not available for kind `{}`", kind.as_str()),
                            ))
                        }
                    };
                    if !extras.contains(&extra) {
                        extras.push(extra);
                    }
                }
                extras
            }
        };

        let dump_grids = match self.take("dump_grids") {
            None => false,
            Some((line, s)) => match s.as_str() {
                "true" => true,
                "false" => false,
                _ => return Err(config_err(line, "dump_grids must be true or false")),
            },
        };
        if dump_grids && kind != ExperimentKind::Wigner {
            return Err(config_err(start, "dump_grids only applies to wigner experiments"));
        }

        if let Some((line, key, _)) = self.keys.first() {
            return Err(config_err(*line, format!("unknown key `{key}`")));
        }

        // cross-key invariants
        if kind == ExperimentKind::Variance && ring_size < 2 * t_max as usize + 2 {
            return Err(config_err(
                start,
                format!(
                    "variance requires ring_size >= 2*t_max + 2 so the wavefront cannot wrap \
                     (got ring_size = {ring_size}, t_max = {t_max})"
                ),
            ));
        }

        Ok(ExperimentConfig {
            name,
            kind,
            ring_size,
            t_max,
            stride,
            angles: FloquetAngles::new(eta, kappa),
            coin,
            members,
            window,
            extras,
            dump_grids,
        })
    }
}

/// Parse a config file into its experiment sections.
pub fn parse_config(text: &str) -> Result<Vec<ExperimentConfig>, RunError> {
    let mut sections: Vec<SectionBuilder> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if line == "[experiment]" {
            sections.push(SectionBuilder { start_line: line_no, keys: Vec::new() });
            continue;
        }
        if line.starts_with('[') {
            return Err(config_err(line_no, format!("unknown section `{line}`")));
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| config_err(line_no, "expected `key = value`"))?;
        let section = sections
            .last_mut()
            .ok_or_else(|| config_err(line_no, "key outside of an [experiment] section"))?;
        let key = key.trim().to_string();
        if section.keys.iter().any(|(_, k, _)| *k == key) {
            return Err(config_err(line_no, format!("duplicate key `{key}`")));
        }
        section.keys.push((line_no, key, value.trim().to_string()));
    }
    if sections.is_empty() {
        return Err(RunError::Config("config contains no [experiment] section".into()));
    }
    let mut configs = Vec::new();
    let mut names = Vec::new();
    for section in sections {
        let start = section.start_line;
        let config = section.build()?;
        if names.contains(&config.name) {
            return Err(config_err(start, format!("duplicate experiment name `{}`", config.name)));
        }
        names.push(config.name.clone());
        configs.push(config);
    }
    Ok(configs)
}
