//! Drawing JSON, embedding JSON and DAG file IO.

use serde::{Deserialize, Serialize};
use thiserror::Error;
use updag_core::dag::ParseError;
use updag_core::drawing::{Drawing, DrawingError};
use updag_core::geom::{parse_q, q_to_string, Point};
use updag_core::outer1p::{NodeKind, Outer1PlanarEmbedding};
use updag_core::{parse_dag, Dag, DagError};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid rational {0:?}")]
    Rational(String),
    #[error("vertex ids must be 0..n in order; found {found} at index {index}")]
    VertexIds { index: usize, found: usize },
    #[error("\"n\" is {n} but {listed} vertices are listed")]
    VertexCount { n: usize, listed: usize },
    #[error(transparent)]
    Graph(#[from] DagError),
    #[error(transparent)]
    Drawing(#[from] DrawingError),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexJson {
    pub id: usize,
    pub x: String,
    pub y: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeJson {
    pub u: usize,
    pub v: usize,
    #[serde(default)]
    pub bends: Vec<[String; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DrawingJson {
    pub n: usize,
    pub vertices: Vec<VertexJson>,
    pub edges: Vec<EdgeJson>,
}

fn point_json(p: &Point) -> [String; 2] {
    [q_to_string(&p.x), q_to_string(&p.y)]
}

fn rational(s: &str) -> Result<updag_core::geom::Q, FormatError> {
    parse_q(s).ok_or_else(|| FormatError::Rational(s.to_string()))
}

impl DrawingJson {
    pub fn from_drawing(d: &Drawing) -> Self {
        let g = d.dag();
        let labels = g.labels();
        let vertices = (0..g.vertex_count())
            .map(|v| {
                let [x, y] = point_json(d.position(v));
                VertexJson { id: v, x, y, label: labels.map(|l| l[v].clone()) }
            })
            .collect();
        let edges = g
            .edges()
            .iter()
            .enumerate()
            .map(|(e, &(u, v))| EdgeJson { u, v, bends: d.bends(e).iter().map(point_json).collect() })
            .collect();
        DrawingJson { n: g.vertex_count(), vertices, edges }
    }

    pub fn to_drawing(&self) -> Result<Drawing, FormatError> {
        if self.vertices.len() != self.n {
            return Err(FormatError::VertexCount { n: self.n, listed: self.vertices.len() });
        }
        let mut position = Vec::with_capacity(self.n);
        for (i, v) in self.vertices.iter().enumerate() {
            if v.id != i {
                return Err(FormatError::VertexIds { index: i, found: v.id });
            }
            position.push(Point::new(rational(&v.x)?, rational(&v.y)?));
        }
        let edges: Vec<(usize, usize)> = self.edges.iter().map(|e| (e.u, e.v)).collect();
        let mut dag = Dag::new(self.n, edges)?;
        if self.vertices.iter().any(|v| v.label.is_some()) {
            let labels = self.vertices.iter().map(|v| v.label.clone().unwrap_or_else(|| v.id.to_string())).collect();
            dag = dag.with_labels(labels);
        }
        let bends = self
            .edges
            .iter()
            .map(|e| e.bends.iter().map(|[x, y]| Ok(Point::new(rational(x)?, rational(y)?))).collect())
            .collect::<Result<Vec<Vec<Point>>, FormatError>>()?;
        Ok(Drawing::new(dag, position, bends)?)
    }
}

pub fn write_drawing(d: &Drawing) -> String {
    let mut s = serde_json::to_string_pretty(&DrawingJson::from_drawing(d)).expect("serializable");
    s.push('\n');
    s
}

pub fn read_drawing(text: &str) -> Result<Drawing, FormatError> {
    serde_json::from_str::<DrawingJson>(text)?.to_drawing()
}

pub fn read_dag(text: &str) -> Result<Dag, FormatError> {
    Ok(parse_dag(text)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingVertexJson {
    pub id: usize,
    pub dummy: bool,
    /// Neighbours in counterclockwise order.
    pub rotation: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossingJson {
    pub dummy: usize,
    /// Indices of the two crossing edges of the input graph.
    pub edges: [usize; 2],
    pub block: usize,
    pub spqr_node: usize,
    pub node_kind: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingJson {
    /// Number of original vertices; dummies follow.
    pub n: usize,
    pub vertices: Vec<EmbeddingVertexJson>,
    /// Directed edges of the planarization.
    pub arcs: Vec<[usize; 2]>,
    pub crossings: Vec<CrossingJson>,
    /// Boundary walk of the outer face.
    pub outer_face: Vec<usize>,
}

fn kind_name(k: NodeKind) -> &'static str {
    match k {
        NodeKind::S => "S",
        NodeKind::P => "P",
        NodeKind::R => "R",
    }
}

impl EmbeddingJson {
    pub fn from_embedding(e: &Outer1PlanarEmbedding) -> Self {
        let pg = &e.planarized;
        let n = pg.original_vertex_count();
        let total = pg.dag_star.vertex_count();
        let (rotation, outer_face) = match &pg.embedding {
            Some(emb) => (emb.rotation.rotation.clone(), emb.outer_face()),
            None => (vec![Vec::new(); total], Vec::new()),
        };
        EmbeddingJson {
            n,
            vertices: (0..total)
                .map(|v| EmbeddingVertexJson { id: v, dummy: v >= n, rotation: rotation[v].clone() })
                .collect(),
            arcs: pg.dag_star.edges().iter().map(|&(u, v)| [u, v]).collect(),
            crossings: pg
                .crossing_origin
                .iter()
                .zip(&e.provenance)
                .enumerate()
                .map(|(i, (&(a, b), src))| CrossingJson {
                    dummy: n + i,
                    edges: [a, b],
                    block: src.block,
                    spqr_node: src.node,
                    node_kind: kind_name(src.kind).to_string(),
                })
                .collect(),
            outer_face,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use updag_core::geom::qr;

    #[test]
    fn drawing_round_trip() {
        let g = Dag::from_edges(3, &[(0, 1), (1, 2), (0, 2)]);
        let pos = vec![Point::int(0, 0), Point::new(qr(1, 3), qr(5, 2)), Point::int(0, 4)];
        let bends = vec![Vec::new(), Vec::new(), vec![Point::new(qr(-1, 2), qr(2, 1))]];
        let d = Drawing::new(g, pos, bends).unwrap();
        let text = write_drawing(&d);
        assert!(text.contains("\"1/3\"") && text.contains("\"-1/2\"") && text.contains("\"0/1\""));
        assert_eq!(read_drawing(&text).unwrap(), d);
    }

    #[test]
    fn rejects_bad_input() {
        let bad_q = r#"{"n":1,"vertices":[{"id":0,"x":"1/0","y":"0"}],"edges":[]}"#;
        assert!(matches!(read_drawing(bad_q), Err(FormatError::Rational(_))));
        let bad_ids = r#"{"n":1,"vertices":[{"id":3,"x":"0","y":"0"}],"edges":[]}"#;
        assert!(matches!(read_drawing(bad_ids), Err(FormatError::VertexIds { .. })));
        let bad_edge = r#"{"n":1,"vertices":[{"id":0,"x":"0","y":"0"}],"edges":[{"u":0,"v":4}]}"#;
        assert!(matches!(read_drawing(bad_edge), Err(FormatError::Graph(_))));
        assert!(matches!(read_drawing("{"), Err(FormatError::Json(_))));
    }
}
