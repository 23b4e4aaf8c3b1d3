use std::fs;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};

use crate::graph::serialize_edge_list;

use super::{all_fixtures, Fixture, SearchError};

fn io(e: std::io::Error) -> SearchError {
    SearchError::Io(e.to_string())
}

fn entry(f: &Fixture) -> Value {
    let labels: serde_json::Map<String, Value> = f.labels.iter().map(|(l, v)| (l.clone(), json!(v))).collect();
    json!({
        "id": f.id,
        "file": format!("{}.edges", f.id),
        "description": f.description,
        "n": f.graph.n(),
        "edges": f.graph.edge_count(),
        "added_edge": f.added_edge.map(|(u, v)| [u, v]),
        "labels": labels,
        "expectations": f.expected,
    })
}

/// Manifest describing every fixture file written by [`export_fixtures`].
pub fn fixture_manifest() -> Value {
    json!({ "fixtures": all_fixtures().iter().map(entry).collect::<Vec<_>>() })
}

/// Writes one edge-list file per fixture plus `manifest.json` into `dir`.
pub fn export_fixtures(dir: &Path) -> Result<Vec<PathBuf>, SearchError> {
    fs::create_dir_all(dir).map_err(io)?;
    let mut written = Vec::new();
    for f in all_fixtures() {
        let path = dir.join(format!("{}.edges", f.id));
        let mut text = format!("# {}: {}\n", f.id, f.description);
        let labels: Vec<String> = f.labels.iter().map(|(l, v)| format!("{l}={v}")).collect();
        text.push_str(&format!("# labels: {}\n", labels.join(" ")));
        if let Some((u, v)) = f.added_edge {
            text.push_str(&format!("# added edge: {u} {v}\n"));
        }
        text.push_str(&serialize_edge_list(&f.graph));
        fs::write(&path, text).map_err(io)?;
        written.push(path);
    }
    let manifest = dir.join("manifest.json");
    let body = serde_json::to_string_pretty(&fixture_manifest()).expect("manifest is valid JSON");
    fs::write(&manifest, body + "\n").map_err(io)?;
    written.push(manifest);
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_graph;

    #[test]
    fn exported_files_parse_back() {
        let dir = std::env::temp_dir().join(format!("centrality-fixtures-{}", std::process::id()));
        let paths = export_fixtures(&dir).unwrap();
        assert_eq!(paths.len(), 13);
        for f in all_fixtures() {
            let text = fs::read_to_string(dir.join(format!("{}.edges", f.id))).unwrap();
            assert_eq!(parse_graph(&text).unwrap(), f.graph);
        }
        let manifest: Value = serde_json::from_str(&fs::read_to_string(dir.join("manifest.json")).unwrap()).unwrap();
        assert_eq!(manifest["fixtures"].as_array().unwrap().len(), 12);
        fs::remove_dir_all(&dir).unwrap();
    }
}
