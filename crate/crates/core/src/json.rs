//! JSON interchange for graphs and chains.
//!
//! A graph is `{"rotation": [[d, ..], ..], "pairing": [[d1, d2], ..],
//! "vertex_order": [v, ..], "tails": [d, ..]}` with 0-based darts.
//! `vertex_order` lists indices into `rotation`, first vertex first; `tails`
//! gives the tail dart of each pairing entry. Both are optional on input and
//! default to the standard orientation. Coefficients are exact strings `"p/q"`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::canon::canonicalize;
use crate::chain::{Chain, ChainError, Grade};
use crate::graph::{GraphError, Orientation, RibbonGraph};
use crate::rational::{self, Rational};

#[derive(Debug, Error)]
pub enum JsonError {
    #[error("malformed JSON at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("invalid graph: {0}")]
    Graph(#[from] GraphError),
    #[error("invalid chain: {0}")]
    Chain(#[from] ChainError),
    #[error("invalid rational {0:?}")]
    Rational(String),
    #[error("term graph has grade {found}, chain declares {declared}")]
    Grade { declared: Grade, found: Grade },
}

impl From<serde_json::Error> for JsonError {
    fn from(e: serde_json::Error) -> Self {
        JsonError::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphJson {
    pub rotation: Vec<Vec<usize>>,
    pub pairing: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertex_order: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tails: Option<Vec<usize>>,
}

impl GraphJson {
    pub fn from_graph(graph: &RibbonGraph, orientation: Option<&Orientation>) -> Self {
        GraphJson {
            rotation: graph.vertices().to_vec(),
            pairing: graph.edges().to_vec(),
            vertex_order: orientation.map(|o| o.vertex_order().to_vec()),
            tails: orientation.map(|o| o.tails().to_vec()),
        }
    }

    pub fn to_graph(&self) -> Result<(RibbonGraph, Orientation), JsonError> {
        let graph = RibbonGraph::new(self.rotation.clone(), self.pairing.clone())?;
        let standard = Orientation::standard(&graph);
        let vertex_order = self.vertex_order.clone().unwrap_or_else(|| standard.vertex_order().to_vec());
        let tails = self.tails.clone().unwrap_or_else(|| standard.tails().to_vec());
        let orientation = Orientation::new(&graph, vertex_order, tails)?;
        Ok((graph, orientation))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermJson {
    pub graph: GraphJson,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainJson {
    pub grade: [usize; 3],
    pub terms: Vec<TermJson>,
}

impl ChainJson {
    pub fn from_chain(chain: &Chain) -> Self {
        let g = chain.grade();
        ChainJson {
            grade: [g.genus, g.punctures, g.vertices],
            terms: chain
                .terms()
                .map(|(graph, c)| TermJson {
                    graph: GraphJson::from_graph(graph.graph(), Some(&graph.orientation())),
                    coeff: rational::to_string(c),
                })
                .collect(),
        }
    }

    pub fn to_chain(&self) -> Result<Chain, JsonError> {
        let declared = Grade::new(self.grade[0], self.grade[1], self.grade[2]);
        let mut chain = Chain::zero(declared);
        for term in &self.terms {
            let (graph, orientation) = term.graph.to_graph()?;
            let found = Grade::of(&graph)?;
            if found != declared {
                return Err(JsonError::Grade { declared, found });
            }
            let coeff = parse_rational(&term.coeff)?;
            let (canon, sign) = canonicalize(&graph, &orientation);
            chain.add_term(canon, coeff * sign.to_rational())?;
        }
        Ok(chain)
    }
}

pub fn parse_rational(s: &str) -> Result<Rational, JsonError> {
    rational::parse(s).ok_or_else(|| JsonError::Rational(s.to_string()))
}

pub fn parse_graph(text: &str) -> Result<(RibbonGraph, Orientation), JsonError> {
    serde_json::from_str::<GraphJson>(text)?.to_graph()
}

pub fn parse_chain(text: &str) -> Result<Chain, JsonError> {
    serde_json::from_str::<ChainJson>(text)?.to_chain()
}

pub fn graph_to_string(graph: &RibbonGraph, orientation: &Orientation) -> String {
    serde_json::to_string(&GraphJson::from_graph(graph, Some(orientation))).expect("graph serializes")
}

pub fn chain_to_string(chain: &Chain) -> String {
    serde_json::to_string(&ChainJson::from_chain(chain)).expect("chain serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::boundary_of_graph;
    use crate::graph::build_xk;

    #[test]
    fn graph_round_trip() {
        let (g, o) = build_xk(5);
        let text = graph_to_string(&g, &o);
        let (g2, o2) = parse_graph(&text).unwrap();
        assert_eq!(g, g2);
        assert_eq!(o, o2);
    }

    #[test]
    fn orientation_is_optional() {
        let (g, o) = parse_graph(r#"{"rotation": [[0, 2, 1, 3]], "pairing": [[0, 1], [2, 3]]}"#).unwrap();
        assert_eq!(o, Orientation::standard(&g));
    }

    #[test]
    fn chain_round_trip() {
        let (g, o) = build_xk(5);
        let d = boundary_of_graph(&g, &o).unwrap();
        let text = chain_to_string(&d);
        let parsed: ChainJson = serde_json::from_str(&text).unwrap();
        assert!(!parsed.terms.is_empty());
        assert!(parsed.terms.iter().all(|t| t.coeff.ends_with("/1")));
        assert_eq!(parse_chain(&text).unwrap(), d);
    }

    #[test]
    fn syntax_errors_carry_positions() {
        match parse_graph("{\n  \"rotation\": [[0, 1]],\n  \"pairing\": [[0 1]]\n}") {
            Err(JsonError::Syntax { line, column, .. }) => {
                assert_eq!(line, 3);
                assert!(column > 0);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn unknown_fields_and_bad_graphs_are_rejected() {
        assert!(parse_graph(r#"{"rotation": [[0, 1]], "pairing": [[0, 1]], "extra": 1}"#).is_err());
        assert!(matches!(
            parse_graph(r#"{"rotation": [[0, 1]], "pairing": [[0, 1]]}"#),
            Err(JsonError::Graph(GraphError::LowValency { .. }))
        ));
    }
}
