//! Structured report output: a key/value tree (default) or a flat
//! two-column table. Values are written exactly as computed; rationals are
//! rendered `p/q`, never as decimals.

/// Ordered key/value tree with explicit depths.
#[derive(Debug, Clone)]
pub struct Report {
    rows: Vec<(usize, String, Option<String>)>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        let mut r = Report { rows: Vec::new() };
        r.kv("format", 1);
        r.kv("command", command);
        r
    }

    pub fn kv(&mut self, key: &str, value: impl std::fmt::Display) -> &mut Self {
        self.rows.push((0, key.to_string(), Some(value.to_string())));
        self
    }

    /// A group header; children are added with [`Report::kv_at`].
    pub fn group(&mut self, key: &str) -> &mut Self {
        self.rows.push((0, key.to_string(), None));
        self
    }

    pub fn kv_at(&mut self, depth: usize, key: &str, value: impl std::fmt::Display) -> &mut Self {
        self.rows.push((depth, key.to_string(), Some(value.to_string())));
        self
    }

    pub fn group_at(&mut self, depth: usize, key: &str) -> &mut Self {
        self.rows.push((depth, key.to_string(), None));
        self
    }

    pub fn render(&self, table: bool) -> String {
        if table {
            self.render_table()
        } else {
            self.render_tree()
        }
    }

    fn render_tree(&self) -> String {
        let mut out = String::new();
        for (depth, key, value) in &self.rows {
            out.push_str(&"  ".repeat(*depth));
            out.push_str(key);
            out.push(':');
            if let Some(v) = value {
                out.push(' ');
                out.push_str(v);
            }
            out.push('\n');
        }
        out
    }

    fn render_table(&self) -> String {
        // dotted paths, groups contribute their name to the path only
        let mut entries: Vec<(String, String)> = Vec::new();
        let mut stack: Vec<String> = Vec::new();
        for (depth, key, value) in &self.rows {
            stack.truncate(*depth);
            match value {
                None => stack.push(key.clone()),
                Some(v) => {
                    let path = if stack.is_empty() {
                        key.clone()
                    } else {
                        format!("{}.{}", stack.join("."), key)
                    };
                    entries.push((path, v.clone()));
                }
            }
        }
        let width = entries.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        let mut out = String::new();
        for (k, v) in entries {
            out.push_str(&format!("{k:<width$}  {v}\n"));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tree_and_table_render() {
        let mut r = Report::new("demo");
        r.kv("x", "3/2");
        r.group("inner");
        r.kv_at(1, "y", 7);
        let tree = r.render(false);
        assert!(tree.starts_with("format: 1\ncommand: demo\n"));
        assert!(tree.contains("inner:\n  y: 7\n"));
        let table = r.render(true);
        assert!(table.contains("inner.y"));
        assert!(!table.contains("inner:\n"));
    }
}
