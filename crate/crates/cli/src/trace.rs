//! Line-oriented trace files.
//!
//! ```text
//! INIT <n> <k> <d> <seed>
//! TOGGLE <u> <v>
//! QUERY
//! SPLITTANCE
//! ```
//!
//! Blank lines and lines starting with `#` are skipped.

use std::fmt;
use std::str::FromStr;

use dynsplit::Vertex;
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Header {
    pub n: u32,
    pub k: u32,
    pub d: u32,
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Toggle(Vertex, Vertex),
    Query,
    Splittance,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trace {
    pub header: Header,
    /// Commands with their 1-based line numbers.
    pub commands: Vec<(usize, Command)>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: vertex pair {u} {v} outside 1..={n} or a loop")]
    VertexRange { line: usize, u: u64, v: u64, n: u32 },
    #[error("trace has no INIT line")]
    MissingHeader,
}

fn syntax(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        message: message.into(),
    }
}

fn field<T: FromStr>(line: usize, word: Option<&str>, name: &str) -> Result<T, ParseError> {
    let word = word.ok_or_else(|| syntax(line, format!("missing {name}")))?;
    word.parse()
        .map_err(|_| syntax(line, format!("{name} `{word}` is not a non-negative integer")))
}

impl FromStr for Trace {
    type Err = ParseError;

    fn from_str(text: &str) -> Result<Self, ParseError> {
        let mut header = None;
        let mut commands = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let mut words = raw.split_whitespace();
            let Some(keyword) = words.next() else { continue };
            if keyword.starts_with('#') {
                continue;
            }
            match (keyword, header) {
                ("INIT", None) => {
                    let h = Header {
                        n: field(line, words.next(), "n")?,
                        k: field(line, words.next(), "k")?,
                        d: field(line, words.next(), "d")?,
                        seed: field(line, words.next(), "seed")?,
                    };
                    if h.n == 0 {
                        return Err(syntax(line, "n must be positive"));
                    }
                    if h.d == 0 {
                        return Err(syntax(line, "d must be positive"));
                    }
                    header = Some(h);
                }
                ("INIT", Some(_)) => return Err(syntax(line, "duplicate INIT")),
                (_, None) => return Err(syntax(line, "expected INIT before any command")),
                ("TOGGLE", Some(h)) => {
                    let u: u64 = field(line, words.next(), "u")?;
                    let v: u64 = field(line, words.next(), "v")?;
                    let n = h.n as u64;
                    if u == v || u == 0 || v == 0 || u > n || v > n {
                        return Err(ParseError::VertexRange { line, u, v, n: h.n });
                    }
                    commands.push((line, Command::Toggle(u as Vertex, v as Vertex)));
                }
                ("QUERY", Some(_)) => commands.push((line, Command::Query)),
                ("SPLITTANCE", Some(_)) => commands.push((line, Command::Splittance)),
                (other, Some(_)) => return Err(syntax(line, format!("unknown command `{other}`"))),
            }
            if words.next().is_some() {
                return Err(syntax(line, "trailing fields"));
            }
        }
        Ok(Trace {
            header: header.ok_or(ParseError::MissingHeader)?,
            commands,
        })
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Command::Toggle(u, v) => write!(f, "TOGGLE {u} {v}"),
            Command::Query => f.write_str("QUERY"),
            Command::Splittance => f.write_str("SPLITTANCE"),
        }
    }
}

impl fmt::Display for Trace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let h = self.header;
        writeln!(f, "INIT {} {} {} {}", h.n, h.k, h.d, h.seed)?;
        for (_, c) in &self.commands {
            writeln!(f, "{c}")?;
        }
        Ok(())
    }
}

impl Trace {
    pub fn new(header: Header) -> Self {
        Trace {
            header,
            commands: Vec::new(),
        }
    }

    /// Appends a command; line numbers follow the rendered layout.
    pub fn push(&mut self, command: Command) {
        let line = self.commands.len() + 2;
        self.commands.push((line, command));
    }

    pub fn toggles(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.commands.iter().filter_map(|(_, c)| match *c {
            Command::Toggle(u, v) => Some((u, v)),
            _ => None,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text = "INIT 4 1 3 7\nTOGGLE 1 2\nTOGGLE 3 4\nQUERY\nSPLITTANCE\n";
        let trace: Trace = text.parse().unwrap();
        assert_eq!(trace.header, Header { n: 4, k: 1, d: 3, seed: 7 });
        assert_eq!(trace.commands.len(), 4);
        assert_eq!(trace.to_string(), text);
    }

    #[test]
    fn errors_name_the_line() {
        let err = "INIT 4 1 3 7\nTOGGLE 1\n".parse::<Trace>().unwrap_err();
        assert_eq!(err.to_string(), "line 2: missing v");
        let err = "INIT 4 1 3 7\n\nTOGGLE 1 5\n".parse::<Trace>().unwrap_err();
        assert!(matches!(err, ParseError::VertexRange { line: 3, .. }));
        assert_eq!("QUERY\n".parse::<Trace>().unwrap_err(), syntax(1, "expected INIT before any command"));
        assert_eq!("".parse::<Trace>().unwrap_err(), ParseError::MissingHeader);
        assert!("INIT 4 1 3 7\nFLIP 1 2\n".parse::<Trace>().is_err());
    }
}
