//! Versioned reports: a prose section followed by a one-line
//! `machine:` trailer of key=value pairs.

/// Output of one CLI command. Rendering is deterministic: same fields,
/// same bytes.
#[derive(Debug, Clone, Default)]
pub struct Report {
    pub title: String,
    pub lines: Vec<String>,
    pub machine: Vec<(String, String)>,
}

pub const FORMAT_VERSION: &str = "1";

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Report {
            title: title.into(),
            lines: Vec::new(),
            machine: Vec::new(),
        }
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    /// Add a machine key. Whitespace is stripped from the value so the
    /// trailer stays token-per-pair; keys must already be bare words.
    pub fn kv(&mut self, key: &str, value: impl ToString) {
        assert!(
            !key.is_empty() && key.chars().all(|c| c.is_ascii_alphanumeric() || c == '_'),
            "machine keys must be bare words"
        );
        let v: String = value.to_string().chars().filter(|c| !c.is_whitespace()).collect();
        self.machine.push((key.to_string(), v));
    }

    pub fn render(&self, machine_only: bool) -> String {
        let mut out = String::new();
        if !machine_only {
            out.push_str(&format!("# {}\n", self.title));
            for l in &self.lines {
                out.push_str(l);
                out.push('\n');
            }
        }
        out.push_str(&self.trailer());
        out.push('\n');
        out
    }

    pub fn trailer(&self) -> String {
        let mut parts = vec![format!("format_version={FORMAT_VERSION}")];
        for (k, v) in &self.machine {
            parts.push(format!("{k}={v}"));
        }
        format!("machine: {}", parts.join(" "))
    }
}

/// Extract the key=value pairs of the `machine:` trailer, if present.
pub fn parse_machine_trailer(text: &str) -> Option<Vec<(String, String)>> {
    let line = text
        .lines()
        .rev()
        .find(|l| l.starts_with("machine: "))?;
    let mut pairs = Vec::new();
    for tok in line["machine: ".len()..].split_whitespace() {
        let (k, v) = tok.split_once('=')?;
        pairs.push((k.to_string(), v.to_string()));
    }
    Some(pairs)
}

/// Value of one machine key in a rendered report.
pub fn machine_value(text: &str, key: &str) -> Option<String> {
    parse_machine_trailer(text)?
        .into_iter()
        .find(|(k, _)| k == key)
        .map(|(_, v)| v)
}
