use serde_json::{Map, Value};

/// Rows of string cells under a fixed header, printed as TSV or as a JSON
/// array of objects keyed by the header.
#[derive(Clone, Debug, Default)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&'static str]) -> Self {
        Table { header: header.to_vec(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        assert_eq!(row.len(), self.header.len(), "row width");
        self.rows.push(row);
    }

    pub fn render(&self, json: bool) -> String {
        if json {
            let rows: Vec<Value> = self
                .rows
                .iter()
                .map(|r| {
                    let obj: Map<String, Value> =
                        self.header.iter().zip(r).map(|(h, c)| (h.to_string(), Value::String(c.clone()))).collect();
                    Value::Object(obj)
                })
                .collect();
            let mut s = serde_json::to_string_pretty(&Value::Array(rows)).expect("tables serialize");
            s.push('\n');
            s
        } else {
            let mut s = self.header.join("\t");
            s.push('\n');
            for r in &self.rows {
                s.push_str(&r.join("\t"));
                s.push('\n');
            }
            s
        }
    }
}

pub fn csv<T: ToString>(v: &[T]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}
