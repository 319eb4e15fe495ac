//! Graph arguments as accepted on the command line.
//!
//! * `family:name:params`, e.g. `family:complete_bipartite:3:3`
//! * shorthands `K<n>`, `P<n>`, `C<n>`, `K<n>-e`
//! * an inline JSON edge list starting with `{`
//! * `@path` reads the file and parses its contents the same way
//! * anything else is graph6

use std::fs;

use metric_gap_core::families::FamilyError;
use metric_gap_core::graph6::Graph6Error;
use metric_gap_core::{parse_graph6, Family, Graph, GraphError};

#[derive(Debug, thiserror::Error)]
pub enum InputError {
    #[error("family `{input}`: {source}")]
    Family { input: String, source: FamilyError },
    #[error("graph6 `{input}`: {source}")]
    Graph6 { input: String, source: Graph6Error },
    #[error("JSON graph: {0}")]
    Json(#[from] GraphError),
    #[error("reading {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("empty graph argument")]
    Empty,
}

/// Parses one graph argument.
pub fn parse_graph(arg: &str) -> Result<Graph, InputError> {
    let arg = arg.trim();
    if arg.is_empty() {
        return Err(InputError::Empty);
    }
    if let Some(path) = arg.strip_prefix('@') {
        let text = fs::read_to_string(path).map_err(|source| InputError::Io {
            path: path.to_string(),
            source,
        })?;
        return parse_graph(&text);
    }
    if let Some(spec) = arg.strip_prefix("family:") {
        return family(spec, arg);
    }
    if arg.starts_with('{') {
        return Ok(Graph::from_json(arg)?);
    }
    if let Some(f) = shorthand(arg) {
        return f.generate().map_err(|source| InputError::Family {
            input: arg.to_string(),
            source,
        });
    }
    parse_graph6(arg).map_err(|source| InputError::Graph6 {
        input: arg.to_string(),
        source,
    })
}

fn family(spec: &str, input: &str) -> Result<Graph, InputError> {
    let wrap = |source| InputError::Family {
        input: input.to_string(),
        source,
    };
    spec.parse::<Family>()
        .map_err(wrap)?
        .generate()
        .map_err(wrap)
}

/// `K4`, `P3`, `C5`, `K4-e`. Digits are below the graph6 alphabet, so these
/// never shadow a graph6 string.
fn shorthand(arg: &str) -> Option<Family> {
    let (body, minus_edge) = match arg.strip_suffix("-e") {
        Some(b) => (b, true),
        None => (arg, false),
    };
    let mut chars = body.chars();
    let head = chars.next()?;
    let n: usize = chars.as_str().parse().ok()?;
    match (head, minus_edge) {
        ('K', false) => Some(Family::Complete(n)),
        ('K', true) => Some(Family::CompleteMinusEdge(n)),
        ('P', false) => Some(Family::Path(n)),
        ('C', false) => Some(Family::Cycle(n)),
        _ => None,
    }
}

/// Comma-separated list of graph arguments, each labelled by its own text.
pub fn parse_graph_list(arg: &str) -> Result<Vec<(String, Graph)>, InputError> {
    arg.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| parse_graph(s).map(|g| (s.to_string(), g)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use metric_gap_core::families::{complete, path};

    #[test]
    fn shorthands() {
        assert_eq!(parse_graph("K2").unwrap(), complete(2));
        assert_eq!(parse_graph("P3").unwrap(), path(3));
        assert_eq!(parse_graph("C4").unwrap().m(), 4);
        assert_eq!(
            parse_graph("K4-e").unwrap(),
            complete(4).remove_edge(0, 1).unwrap()
        );
        assert!(parse_graph("C2").is_err());
    }

    #[test]
    fn families_and_json() {
        assert_eq!(parse_graph("family:path:3").unwrap(), path(3));
        assert_eq!(parse_graph("family:complete_bipartite:3:3").unwrap().m(), 9);
        let g = parse_graph(r#"{"n":3,"edges":[[0,1],[1,2]]}"#).unwrap();
        assert_eq!(g, path(3));
        assert!(matches!(
            parse_graph("family:nope:3"),
            Err(InputError::Family { .. })
        ));
    }

    #[test]
    fn graph6_fallback() {
        assert_eq!(parse_graph("A_").unwrap(), complete(2));
        assert_eq!(parse_graph("D??").unwrap().m(), 0);
        assert!(matches!(parse_graph("D?"), Err(InputError::Graph6 { .. })));
    }

    #[test]
    fn file_argument() {
        let dir = std::env::temp_dir().join(format!("metric-gap-input-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        let file = dir.join("g.json");
        fs::write(&file, r#"{"n":2,"edges":[[0,1]]}"#).unwrap();
        assert_eq!(
            parse_graph(&format!("@{}", file.display())).unwrap(),
            complete(2)
        );
        fs::remove_dir_all(&dir).unwrap();
        assert!(matches!(
            parse_graph("@/definitely/missing"),
            Err(InputError::Io { .. })
        ));
    }

    #[test]
    fn lists() {
        let hs = parse_graph_list("K2, P3,K4-e").unwrap();
        let names: Vec<_> = hs.iter().map(|(s, _)| s.as_str()).collect();
        assert_eq!(names, ["K2", "P3", "K4-e"]);
    }
}
