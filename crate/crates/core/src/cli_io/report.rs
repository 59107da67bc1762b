//! Plain-text reports: a schema line, the command, then titled sections of
//! `key: value` lines in a fixed order. No timestamps, so equal inputs give
//! byte-identical reports.

pub const SCHEMA: &str = "cylhom-report/1";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Section {
    pub title: String,
    pub lines: Vec<String>,
}

impl Section {
    pub fn kv(&mut self, key: &str, value: impl std::fmt::Display) -> &mut Self {
        self.lines.push(format!("{key}: {value}"));
        self
    }

    pub fn line(&mut self, text: impl Into<String>) -> &mut Self {
        self.lines.push(text.into());
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub command: String,
    pub sections: Vec<Section>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.to_string(),
            sections: Vec::new(),
        }
    }

    pub fn section(&mut self, title: &str) -> &mut Section {
        self.sections.push(Section {
            title: title.to_string(),
            lines: Vec::new(),
        });
        self.sections.last_mut().expect("just pushed")
    }

    pub fn render(&self) -> String {
        let mut out = format!("schema: {SCHEMA}\ncommand: {}\n", self.command);
        for s in &self.sections {
            out.push_str(&format!("\n[{}]\n", s.title));
            for l in &s.lines {
                out.push_str(l);
                out.push('\n');
            }
        }
        out
    }
}
