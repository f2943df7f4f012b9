use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use serde::Deserialize;

use qnil::rootdata::{parse_word, CartanDatum, WeylWord};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MinorSign {
    Lowest,
    Highest,
}

/// Options shared by every command. All of them may also come from a
/// TOML config file; flags win.
#[derive(Args, Clone, Debug, Default)]
pub struct Options {
    /// TOML file with default values for the options below
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Built-in type such as A2, B3, G2, or inline JSON {"gcm": .., "sym": ..}
    #[arg(long, global = true)]
    pub cartan: Option<String>,
    /// Reduced word, 1-based and comma separated
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub word: Option<String>,
    /// Maximal height of the weights visited
    #[arg(long, global = true)]
    pub height: Option<i64>,
    /// Total order on the index set, e.g. 2,1
    #[arg(long, global = true)]
    pub order: Option<String>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write the report here instead of stdout
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Dominant weight in fundamental coordinates, e.g. 1,0
    #[arg(long, global = true)]
    pub lambda: Option<String>,
    #[arg(long, global = true)]
    pub u: Option<String>,
    #[arg(long, global = true)]
    pub w: Option<String>,
    #[arg(long, global = true, value_enum)]
    pub sign: Option<MinorSign>,
    /// Chart word for PBW coordinates
    #[arg(long, global = true)]
    pub chart: Option<String>,
    #[arg(long, global = true)]
    pub b: Option<usize>,
    #[arg(long, global = true)]
    pub d: Option<usize>,
    /// Composition labelling a basis element, e.g. 1,0,1
    #[arg(long, global = true)]
    pub label: Option<String>,
    /// Element of U_q^- as JSON [[word, ratfunc], ...]
    #[arg(long, global = true)]
    pub element: Option<String>,
}

#[derive(Deserialize, Debug, Default)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    cartan: Option<toml::Value>,
    word: Option<toml::Value>,
    height: Option<i64>,
    order: Option<toml::Value>,
    format: Option<Format>,
    output: Option<PathBuf>,
    lambda: Option<toml::Value>,
    u: Option<toml::Value>,
    w: Option<toml::Value>,
    sign: Option<MinorSign>,
    chart: Option<toml::Value>,
    b: Option<usize>,
    d: Option<usize>,
    label: Option<toml::Value>,
    element: Option<String>,
}

#[derive(Debug)]
pub struct UsageError(pub String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

/// Lists may be written as "1,2,1" or [1, 2, 1] in the file.
fn list_text(v: toml::Value, key: &str) -> Result<String, UsageError> {
    match v {
        toml::Value::String(s) => Ok(s),
        toml::Value::Integer(i) => Ok(i.to_string()),
        toml::Value::Array(a) => a
            .into_iter()
            .map(|x| x.as_integer().map(|i| i.to_string()).ok_or_else(|| UsageError(format!("{key}: expected integers"))))
            .collect::<Result<Vec<_>, _>>()
            .map(|v| v.join(",")),
        _ => Err(UsageError(format!("{key}: expected a string or an integer list"))),
    }
}

fn cartan_text(v: toml::Value) -> Result<String, UsageError> {
    match v {
        toml::Value::String(s) => Ok(s),
        toml::Value::Table(t) => Ok(serde_json::to_string(&t)?),
        _ => Err(UsageError("cartan: expected a name or a table".into())),
    }
}

impl Options {
    /// Fill unset options from the config file, if one was given.
    pub fn merged(mut self) -> Result<Options, UsageError> {
        let Some(path) = self.config.clone() else { return Ok(self) };
        let file = load(&path)?;
        macro_rules! fill {
            ($field:ident) => {
                if self.$field.is_none() {
                    self.$field = file.$field;
                }
            };
            ($field:ident, $conv:expr) => {
                if self.$field.is_none() {
                    if let Some(v) = file.$field {
                        self.$field = Some($conv(v)?);
                    }
                }
            };
        }
        fill!(cartan, cartan_text);
        fill!(word, |v| list_text(v, "word"));
        fill!(height);
        fill!(order, |v| list_text(v, "order"));
        fill!(format);
        fill!(output);
        fill!(lambda, |v| list_text(v, "lambda"));
        fill!(u, |v| list_text(v, "u"));
        fill!(w, |v| list_text(v, "w"));
        fill!(sign);
        fill!(chart, |v| list_text(v, "chart"));
        fill!(b);
        fill!(d);
        fill!(label, |v| list_text(v, "label"));
        fill!(element);
        Ok(self)
    }

    pub fn cartan(&self) -> Result<CartanDatum, UsageError> {
        let s = self.cartan.as_deref().ok_or_else(|| UsageError("missing --cartan".into()))?;
        Ok(CartanDatum::parse(s)?)
    }

    pub fn format(&self) -> Format {
        self.format.unwrap_or_default()
    }

    pub fn height(&self, default: i64) -> Result<i64, UsageError> {
        let h = self.height.unwrap_or(default);
        if h < 0 {
            return Err(UsageError("--height must be non-negative".into()));
        }
        Ok(h)
    }

    pub fn word_of(c: &CartanDatum, text: Option<&str>, name: &str) -> Result<WeylWord, UsageError> {
        let t = text.ok_or_else(|| UsageError(format!("missing --{name}")))?;
        let w = parse_word(t).map_err(|e| UsageError(format!("--{name}: {e}")))?;
        c.check_word(&w).map_err(|e| UsageError(format!("--{name}: {e}")))?;
        Ok(w)
    }

    pub fn word(&self, c: &CartanDatum) -> Result<WeylWord, UsageError> {
        let w = Self::word_of(c, self.word.as_deref(), "word")?;
        if !c.is_reduced(&w) {
            return Err(UsageError("--word is not reduced".into()));
        }
        Ok(w)
    }

    pub fn order(&self, c: &CartanDatum) -> Result<Vec<usize>, UsageError> {
        match &self.order {
            None => Ok((0..c.rank()).collect()),
            Some(t) => {
                let o = Self::word_of(c, Some(t), "order")?;
                let mut s = o.clone();
                s.sort_unstable();
                if s != (0..c.rank()).collect::<Vec<_>>() {
                    return Err(UsageError("--order must list every index exactly once".into()));
                }
                Ok(o)
            }
        }
    }

    pub fn ints(text: &str, name: &str) -> Result<Vec<i64>, UsageError> {
        if text.trim().is_empty() {
            return Ok(Vec::new());
        }
        text.split(',')
            .map(|x| x.trim().parse::<i64>().map_err(|_| UsageError(format!("--{name}: bad integer {x:?}"))))
            .collect()
    }
}

fn load(path: &Path) -> Result<FileConfig, UsageError> {
    let text = std::fs::read_to_string(path).map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
    toml::from_str(&text).map_err(|e| UsageError(format!("{}: {e}", path.display())))
}
