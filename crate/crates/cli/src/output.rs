use clap::ValueEnum;
use mmcurve::series::json::to_json;
use mmcurve::PSeries;
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Json,
}

pub struct Named {
    pub name: String,
    pub series: PSeries,
}

pub struct Report {
    pub text: String,
    pub passed: bool,
}

/// Plain: one `name = series` line each. JSON: an array of `{"name", "series"}`,
/// where `series` is the series-core encoding.
pub fn render(items: &[Named], format: Format, two_n: bool) -> Report {
    let text = match format {
        Format::Plain => items.iter().map(|i| format!("{} = {}\n", i.name, i.series.to_plain(two_n))).collect(),
        Format::Json => {
            let arr: Vec<Value> = items
                .iter()
                .map(|i| {
                    let series: Value = serde_json::from_str(&to_json(&i.series)).expect("series json is valid");
                    json!({ "name": i.name, "series": series })
                })
                .collect();
            let mut s = serde_json::to_string_pretty(&Value::Array(arr)).expect("serializable");
            s.push('\n');
            s
        }
    };
    Report { text, passed: true }
}
