//! Run settings from flags and flat `key=value` config files.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use clap::Parser;
use hitchin_core::linalg::{rational, Rational};
use hitchin_core::{CartanType, LatticeSpec, RootDatum, DEFAULT_ENUMERATION_CAP};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

impl Format {
    pub fn as_str(self) -> &'static str {
        match self {
            Format::Text => "text",
            Format::Json => "json",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunSpec {
    pub cartan: CartanType,
    pub lattice: LatticeSpec,
    pub genus: u32,
    pub enumeration_cap: u64,
    pub verify: bool,
    pub output_format: Format,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepSpec {
    pub preset: String,
    pub enumeration_cap: u64,
    pub verify: bool,
    pub output_format: Format,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    Run(RunSpec),
    Sweep(SweepSpec),
}

#[derive(Debug, Parser)]
#[command(name = "hitchin", version, about = "Spectral cover, Prym dimension and fibre data for reductive groups")]
struct Cli {
    /// Cartan type, e.g. `A2+B3`, `T` for a torus; may embed `lattice=..` and `central=..`
    #[arg(long = "type", value_name = "TYPE")]
    cartan: Option<String>,
    /// sc | adjoint | file=PATH
    #[arg(long)]
    lattice: Option<String>,
    #[arg(long, value_name = "N")]
    central_rank: Option<String>,
    #[arg(long, value_name = "G")]
    genus: Option<String>,
    /// Largest Weyl group that is enumerated element by element
    #[arg(long, value_name = "N")]
    max_enumeration: Option<String>,
    /// Cross-check the analytic results against full sums over W
    #[arg(long)]
    verify: bool,
    /// text | json
    #[arg(long)]
    format: Option<String>,
    /// Run a built-in grid instead of a single group
    #[arg(long, value_name = "PRESET")]
    sweep: Option<String>,
    /// Flat key=value file using the long flag names as keys
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
}

const KEYS: &[&str] = &[
    "type",
    "lattice",
    "central-rank",
    "genus",
    "max-enumeration",
    "verify",
    "format",
    "sweep",
];

/// Settings after merging the config file with the command line.
#[derive(Debug, Default)]
struct Settings {
    values: BTreeMap<&'static str, String>,
}

impl Settings {
    fn set(&mut self, key: &'static str, value: Option<String>) {
        if let Some(v) = value {
            self.values.insert(key, v);
        }
    }

    fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }
}

fn canonical_key(key: &str) -> Option<&'static str> {
    let key = key.trim().replace('_', "-");
    KEYS.iter().copied().find(|k| *k == key)
}

fn read_config(path: &Path) -> Result<Settings, CliError> {
    let config_err = |line: usize, message: String| CliError::Config {
        path: path.display().to_string(),
        line,
        message,
    };
    let text = fs::read_to_string(path).map_err(|e| config_err(0, e.to_string()))?;
    let mut settings = Settings::default();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| config_err(n + 1, format!("expected key=value, got `{line}`")))?;
        let key = canonical_key(key).ok_or_else(|| config_err(n + 1, format!("unknown key `{}`", key.trim())))?;
        let value = value.trim();
        if key == "verify" && parse_bool(value).is_none() {
            return Err(config_err(n + 1, format!("verify: expected true or false, got `{value}`")));
        }
        settings.values.insert(key, value.to_string());
    }
    Ok(settings)
}

fn parse_bool(s: &str) -> Option<bool> {
    match s.to_ascii_lowercase().as_str() {
        "true" | "yes" | "1" | "on" => Some(true),
        "false" | "no" | "0" | "off" => Some(false),
        _ => None,
    }
}

/// Parses the command line (including the program name) into a command.
pub fn parse_spec<I, T>(argv: I) -> Result<Command, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv).map_err(CliError::Clap)?;
    let mut settings = match &cli.config {
        Some(path) => read_config(path)?,
        None => Settings::default(),
    };
    settings.set("type", cli.cartan);
    settings.set("lattice", cli.lattice);
    settings.set("central-rank", cli.central_rank);
    settings.set("genus", cli.genus);
    settings.set("max-enumeration", cli.max_enumeration);
    settings.set("format", cli.format);
    settings.set("sweep", cli.sweep);
    if cli.verify {
        settings.set("verify", Some("true".into()));
    }
    resolve(&settings)
}

fn resolve(settings: &Settings) -> Result<Command, CliError> {
    let verify = settings.get("verify").and_then(parse_bool).unwrap_or(false);
    let output_format = match settings.get("format").unwrap_or("text") {
        "text" => Format::Text,
        "json" => Format::Json,
        other => return Err(CliError::Usage(format!("format: expected text or json, got `{other}`"))),
    };
    let enumeration_cap = match settings.get("max-enumeration") {
        None => DEFAULT_ENUMERATION_CAP as u64,
        Some(s) => match s.parse::<u64>() {
            Ok(n) if n >= 1 => n,
            _ => return Err(CliError::Usage(format!("max-enumeration: expected an integer ≥ 1, got `{s}`"))),
        },
    };

    if let Some(preset) = settings.get("sweep") {
        return Ok(Command::Sweep(SweepSpec {
            preset: preset.to_string(),
            enumeration_cap,
            verify,
            output_format,
        }));
    }

    let type_text = settings
        .get("type")
        .ok_or_else(|| CliError::Usage("missing --type (or --sweep)".into()))?;
    let mut embedded = parse_type_tokens(type_text)?;
    // explicit settings win over tokens embedded in the type string
    if let Some(l) = settings.get("lattice") {
        embedded.lattice = Some(l.to_string());
    }
    if let Some(h) = settings.get("central-rank") {
        embedded.central = Some(h.to_string());
    }
    let central = match embedded.central.as_deref() {
        None => 0,
        Some(s) => s
            .parse::<usize>()
            .map_err(|_| CliError::Usage(format!("central-rank: expected a non-negative integer, got `{s}`")))?,
    };
    let cartan = embedded
        .cartan
        .with_central_rank(central)
        .map_err(|_| CliError::InvalidType(format!("{type_text}: a torus needs central-rank ≥ 1")))?;
    let lattice = parse_lattice(embedded.lattice.as_deref().unwrap_or("sc"))?;

    let genus_text = settings
        .get("genus")
        .ok_or_else(|| CliError::Usage("missing --genus".into()))?;
    let genus = genus_text
        .parse::<u32>()
        .map_err(|_| CliError::Usage(format!("genus: expected a non-negative integer, got `{genus_text}`")))?;
    if genus < 2 {
        return Err(CliError::Genus(genus));
    }

    if let LatticeSpec::Custom(_) = &lattice {
        let source = embedded.lattice.unwrap_or_default();
        RootDatum::new(cartan.clone(), lattice.clone()).map_err(|e| CliError::LatticeFile {
            path: source.trim_start_matches("file=").to_string(),
            message: e.to_string(),
        })?;
    }

    Ok(Command::Run(RunSpec {
        cartan,
        lattice,
        genus,
        enumeration_cap,
        verify,
        output_format,
    }))
}

struct TypeTokens {
    cartan: CartanType,
    lattice: Option<String>,
    central: Option<String>,
}

/// `"A2+B3 lattice=sc central=1"`: type names, then optional key=value tokens.
fn parse_type_tokens(text: &str) -> Result<TypeTokens, CliError> {
    let mut names = Vec::new();
    let mut lattice = None;
    let mut central = None;
    for token in text.split_whitespace() {
        match token.split_once('=') {
            Some(("lattice", v)) => lattice = Some(v.to_string()),
            Some(("central", v)) | Some(("central-rank", v)) => central = Some(v.to_string()),
            Some((k, _)) => return Err(CliError::InvalidType(format!("{text}: unknown token `{k}=`"))),
            None => names.push(token),
        }
    }
    let cartan = names
        .join("")
        .parse::<CartanType>()
        .map_err(|e| CliError::InvalidType(format!("{text}: {e}")))?;
    Ok(TypeTokens { cartan, lattice, central })
}

pub fn parse_lattice(text: &str) -> Result<LatticeSpec, CliError> {
    match text.trim() {
        "sc" | "simply_connected" | "simply-connected" => Ok(LatticeSpec::SimplyConnected),
        "adjoint" | "ad" => Ok(LatticeSpec::Adjoint),
        other => match other.strip_prefix("file=") {
            Some(path) => read_lattice_file(Path::new(path)).map(LatticeSpec::Custom),
            None => Err(CliError::Usage(format!("lattice: expected sc, adjoint or file=PATH, got `{other}`"))),
        },
    }
}

/// Reads a basis of `X(T)`, one row per line (or a JSON array of rows), in
/// fundamental-weight ⊕ central coordinates. Entries are integers or `p/q`.
pub fn read_lattice_file(path: &Path) -> Result<Vec<Vec<Rational>>, CliError> {
    let err = |message: String| CliError::LatticeFile {
        path: path.display().to_string(),
        message,
    };
    let text = fs::read_to_string(path).map_err(|e| err(e.to_string()))?;
    let rows = if text.trim_start().starts_with('[') {
        let json: Vec<Vec<serde_json::Value>> =
            serde_json::from_str(&text).map_err(|e| err(format!("invalid JSON matrix: {e}")))?;
        let mut rows = Vec::new();
        for (i, row) in json.iter().enumerate() {
            let mut out = Vec::new();
            for (j, v) in row.iter().enumerate() {
                let entry = match v {
                    serde_json::Value::Number(n) => n.as_i64().map(|x| rational(x as i128)),
                    serde_json::Value::String(s) => parse_entry(s),
                    _ => None,
                };
                out.push(entry.ok_or_else(|| err(format!("row {}, column {}: `{v}` is not an integer or p/q", i + 1, j + 1)))?);
            }
            rows.push(out);
        }
        rows
    } else {
        let mut rows = Vec::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let row = line
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|s| !s.is_empty())
                .map(|s| parse_entry(s).ok_or_else(|| err(format!("line {}: `{s}` is not an integer or p/q", n + 1))))
                .collect::<Result<Vec<_>, _>>()?;
            rows.push(row);
        }
        rows
    };
    if rows.is_empty() {
        return Err(err("no rows".into()));
    }
    Ok(rows)
}

fn parse_entry(s: &str) -> Option<Rational> {
    match s.split_once('/') {
        Some((p, q)) => {
            let (p, q) = (p.trim().parse::<i128>().ok()?, q.trim().parse::<i128>().ok()?);
            (q != 0).then(|| Rational::new(p, q))
        }
        None => s.trim().parse::<i128>().ok().map(rational),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_spec(args: &[&str]) -> RunSpec {
        let argv = std::iter::once("hitchin").chain(args.iter().copied());
        match parse_spec(argv).unwrap() {
            Command::Run(s) => s,
            other => panic!("expected a single run, got {other:?}"),
        }
    }

    fn parse_err(args: &[&str]) -> CliError {
        parse_spec(std::iter::once("hitchin").chain(args.iter().copied())).unwrap_err()
    }

    #[test]
    fn direct_flags() {
        let s = run_spec(&["--type", "A2", "--lattice", "adjoint", "--genus", "2"]);
        assert_eq!(s.cartan.to_string(), "A2");
        assert_eq!(s.lattice, LatticeSpec::Adjoint);
        assert_eq!(s.genus, 2);
        assert_eq!(s.enumeration_cap, DEFAULT_ENUMERATION_CAP as u64);
        assert!(!s.verify);
        assert_eq!(s.output_format, Format::Text);
    }

    #[test]
    fn product_with_center() {
        let s = run_spec(&["--type", "B2+A1", "--central-rank", "1", "--genus", "3", "--format", "json"]);
        assert_eq!(s.cartan.to_string(), "B2+A1");
        assert_eq!(s.cartan.central_rank(), 1);
        assert_eq!(s.output_format, Format::Json);
    }

    #[test]
    fn embedded_tokens_and_override() {
        let s = run_spec(&["--type", "A2+B3 lattice=adjoint central=1", "--genus", "2"]);
        assert_eq!(s.lattice, LatticeSpec::Adjoint);
        assert_eq!(s.cartan.central_rank(), 1);
        let s = run_spec(&["--type", "A2 lattice=adjoint", "--lattice", "sc", "--genus", "2"]);
        assert_eq!(s.lattice, LatticeSpec::SimplyConnected);
    }

    #[test]
    fn errors_carry_distinct_codes() {
        let genus = parse_err(&["--type", "A1", "--genus", "1"]);
        assert!(matches!(genus, CliError::Genus(1)));
        assert!(genus.to_string().contains("genus must be ≥ 2"));
        let bad_type = parse_err(&["--type", "Q7", "--genus", "2"]);
        assert!(matches!(bad_type, CliError::InvalidType(_)));
        let torus = parse_err(&["--type", "T", "--genus", "2"]);
        assert!(matches!(torus, CliError::InvalidType(_)));
        let lattice = parse_err(&["--type", "A1", "--lattice", "file=/nonexistent/basis.txt", "--genus", "2"]);
        assert!(matches!(lattice, CliError::LatticeFile { .. }));
        let cap = parse_err(&["--type", "A1", "--genus", "2", "--max-enumeration", "0"]);
        assert!(matches!(cap, CliError::Usage(_)));
        let codes: std::collections::BTreeSet<i32> =
            [genus, bad_type, lattice, cap].iter().map(CliError::exit_code).collect();
        assert_eq!(codes.len(), 4);
    }

    #[test]
    fn entries() {
        assert_eq!(parse_entry("3"), Some(rational(3)));
        assert_eq!(parse_entry("-1/2"), Some(Rational::new(-1, 2)));
        assert_eq!(parse_entry("1/0"), None);
        assert_eq!(parse_entry("x"), None);
    }

    #[test]
    fn config_keys() {
        assert_eq!(canonical_key("central_rank"), Some("central-rank"));
        assert_eq!(canonical_key(" genus "), Some("genus"));
        assert_eq!(canonical_key("colour"), None);
    }
}
