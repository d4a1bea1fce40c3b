//! Network representation and edge-list ingestion.

use std::collections::{BTreeMap, HashMap};
use std::io::{BufRead, Write};

use crate::config::DegreeWeighting;
use crate::error::{Error, Result};
use crate::sparse::CsrMatrix;

/// Interpretation of edge weights.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Hyperlink graph: every edge has weight 1.
    Www,
    /// Trade graph: each edge is a resource flow weighted by its price.
    Trading,
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "www" => Ok(Mode::Www),
            "trading" => Ok(Mode::Trading),
            other => Err(Error::InvalidArgument(format!("unknown mode `{other}`"))),
        }
    }
}

/// One input record before ingestion.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeRow {
    pub source: String,
    pub target: String,
    pub weight: Option<f64>,
    pub resource: Option<String>,
    /// Source line, when the row was read from a file.
    pub line: Option<usize>,
}

impl EdgeRow {
    pub fn new(source: impl Into<String>, target: impl Into<String>, weight: f64) -> Self {
        EdgeRow {
            source: source.into(),
            target: target.into(),
            weight: Some(weight),
            resource: None,
            line: None,
        }
    }

    pub fn labeled(mut self, resource: impl Into<String>) -> Self {
        self.resource = Some(resource.into());
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Edge {
    pub source: usize,
    pub target: usize,
    pub weight: f64,
    pub resource: Option<String>,
}

/// Immutable weighted directed graph snapshot.
///
/// `adjacency` holds every stored edge, self-loops included, with parallel
/// edges summed. Ranking operators work on [`Network::links`], the same
/// matrix with the diagonal removed.
#[derive(Debug, Clone)]
pub struct Network {
    mode: Mode,
    ids: Vec<String>,
    index: HashMap<String, usize>,
    edges: Vec<Edge>,
    adjacency: CsrMatrix,
    links: CsrMatrix,
}

impl Network {
    /// Assemble a network from already-indexed parts. Vertices without edges
    /// are kept.
    pub fn from_parts(mode: Mode, ids: Vec<String>, edges: Vec<Edge>) -> Result<Self> {
        let mut index = HashMap::with_capacity(ids.len());
        for (i, id) in ids.iter().enumerate() {
            if index.insert(id.clone(), i).is_some() {
                return Err(Error::InvalidArgument(format!("duplicate vertex id `{id}`")));
            }
        }
        let n = ids.len();
        for (row, e) in edges.iter().enumerate() {
            if e.source >= n || e.target >= n {
                return Err(Error::InvalidArgument(format!(
                    "edge {} references vertex outside 0..{n}",
                    row + 1
                )));
            }
            if !e.weight.is_finite() || e.weight < 0.0 {
                return Err(Error::NegativeWeight { row: row + 1, weight: e.weight });
            }
            if mode == Mode::Www && e.weight != 1.0 {
                return Err(Error::NonUnitWeight { row: row + 1, weight: e.weight });
            }
        }
        let adjacency = CsrMatrix::from_triplets(n, n, edges.iter().map(|e| (e.source, e.target, e.weight)));
        let links = adjacency.without_diagonal();
        Ok(Network { mode, ids, index, edges, adjacency, links })
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn vertex_count(&self) -> usize {
        self.ids.len()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    /// Stored edges in input order, before accumulation.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// The full adjacency matrix `L`.
    pub fn adjacency(&self) -> &CsrMatrix {
        &self.adjacency
    }

    /// `L` without self-loops; the input of every ranking operator.
    pub fn links(&self) -> &CsrMatrix {
        &self.links
    }

    /// Number of distinct ordered vertex pairs joined by a non-loop edge.
    pub fn link_count(&self) -> usize {
        self.links.iter().filter(|(_, _, v)| *v > 0.0).count()
    }

    /// The edge rows that would reproduce this network when ingested.
    pub fn to_rows(&self) -> Vec<EdgeRow> {
        self.edges
            .iter()
            .map(|e| EdgeRow {
                source: self.ids[e.source].clone(),
                target: self.ids[e.target].clone(),
                weight: Some(e.weight),
                resource: e.resource.clone(),
                line: None,
            })
            .collect()
    }

    /// Same vertices and edges with every weight replaced by 1.
    pub fn unweighted(&self) -> Network {
        let edges = self.edges.iter().map(|e| Edge { weight: 1.0, ..e.clone() }).collect();
        Network::from_parts(Mode::Www, self.ids.clone(), edges).expect("unit weights on a valid network")
    }

    /// Copy of the network in another mode. Fails when switching to www mode
    /// with non-unit weights.
    pub fn with_mode(&self, mode: Mode) -> Result<Network> {
        Network::from_parts(mode, self.ids.clone(), self.edges.clone())
    }

    /// Relabel vertices: vertex `i` becomes vertex `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Network> {
        let n = self.vertex_count();
        if perm.len() != n {
            return Err(Error::DimensionMismatch { expected: n, actual: perm.len() });
        }
        let mut ids = vec![String::new(); n];
        for (i, &p) in perm.iter().enumerate() {
            ids[p] = self.ids[i].clone();
        }
        let edges = self
            .edges
            .iter()
            .map(|e| Edge { source: perm[e.source], target: perm[e.target], ..e.clone() })
            .collect();
        Network::from_parts(self.mode, ids, edges)
    }
}

/// Build a network from edge rows. Vertex indices follow first appearance
/// (source before target within a row).
pub fn ingest_edge_list(rows: &[EdgeRow], mode: Mode) -> Result<Network> {
    let mut ids: Vec<String> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut intern = |id: &str, ids: &mut Vec<String>| -> usize {
        if let Some(&i) = index.get(id) {
            return i;
        }
        ids.push(id.to_owned());
        index.insert(id.to_owned(), ids.len() - 1);
        ids.len() - 1
    };

    let mut edges = Vec::with_capacity(rows.len());
    for (pos, row) in rows.iter().enumerate() {
        let at = row.line.unwrap_or(pos + 1);
        let weight = row.weight.unwrap_or(1.0);
        if !weight.is_finite() || weight < 0.0 {
            return Err(Error::NegativeWeight { row: at, weight });
        }
        if mode == Mode::Www && weight != 1.0 {
            return Err(Error::NonUnitWeight { row: at, weight });
        }
        let source = intern(&row.source, &mut ids);
        let target = intern(&row.target, &mut ids);
        edges.push(Edge { source, target, weight, resource: row.resource.clone() });
    }
    Network::from_parts(mode, ids, edges)
}

/// One trading network per resource label, keyed by label.
pub fn split_by_resource(rows: &[EdgeRow]) -> Result<BTreeMap<String, Network>> {
    let mut groups: BTreeMap<String, Vec<EdgeRow>> = BTreeMap::new();
    for (pos, row) in rows.iter().enumerate() {
        let label = row.resource.as_ref().ok_or(Error::MissingLabel { row: row.line.unwrap_or(pos + 1) })?;
        groups.entry(label.clone()).or_default().push(row.clone());
    }
    groups.into_iter().map(|(label, rows)| Ok((label, ingest_edge_list(&rows, Mode::Trading)?))).collect()
}

/// In-, out- and total degree of every vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct DegreeSummary {
    pub indeg: Vec<f64>,
    pub outdeg: Vec<f64>,
    pub deg: Vec<f64>,
}

impl DegreeSummary {
    /// Degrees of an adjacency matrix: column sums are in-degrees, row sums
    /// out-degrees. `Count` counts positive entries instead of summing them.
    pub fn from_matrix(matrix: &CsrMatrix, weighting: DegreeWeighting) -> Self {
        let m;
        let matrix = match weighting {
            DegreeWeighting::Volume => matrix,
            DegreeWeighting::Count => {
                m = CsrMatrix::from_triplets(
                    matrix.n_rows(),
                    matrix.n_cols(),
                    matrix.iter().filter(|e| e.2 > 0.0).map(|(i, j, _)| (i, j, 1.0)),
                );
                &m
            }
        };
        let indeg = matrix.col_sums();
        let outdeg = matrix.row_sums();
        let deg = indeg.iter().zip(&outdeg).map(|(a, b)| a + b).collect();
        DegreeSummary { indeg, outdeg, deg }
    }
}

/// Weighted degrees of the full adjacency matrix.
pub fn degree_summary(net: &Network) -> DegreeSummary {
    DegreeSummary::from_matrix(net.adjacency(), DegreeWeighting::Volume)
}

/// Degrees of the loop-free link matrix, as used by the ranking operators.
pub fn link_degrees(net: &Network, weighting: DegreeWeighting) -> DegreeSummary {
    DegreeSummary::from_matrix(net.links(), weighting)
}

fn split_fields(line: &str) -> Vec<&str> {
    if line.contains('\t') {
        line.split('\t').map(str::trim).collect()
    } else if line.contains(',') {
        line.split(',').map(str::trim).collect()
    } else {
        line.split_whitespace().collect()
    }
}

/// Parse a delimited edge list: `source target [weight [resource]]` per
/// line, separated by tabs, commas or whitespace. `#` starts a comment line.
pub fn read_edge_list(reader: impl BufRead) -> Result<Vec<EdgeRow>> {
    let mut rows = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line_no = i + 1;
        let line = line.map_err(|e| Error::Parse { line: line_no, reason: e.to_string() })?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let fields = split_fields(trimmed);
        if fields.len() < 2 || fields.len() > 4 {
            return Err(Error::Parse {
                line: line_no,
                reason: format!("expected 2 to 4 fields, found {}", fields.len()),
            });
        }
        if fields[0].is_empty() || fields[1].is_empty() {
            return Err(Error::Parse { line: line_no, reason: "empty vertex id".into() });
        }
        let weight = match fields.get(2) {
            Some(w) if !w.is_empty() => Some(w.parse::<f64>().map_err(|_| Error::Parse {
                line: line_no,
                reason: format!("weight `{w}` is not a number"),
            })?),
            _ => None,
        };
        let resource = fields.get(3).filter(|r| !r.is_empty()).map(|r| r.to_string());
        rows.push(EdgeRow {
            source: fields[0].to_owned(),
            target: fields[1].to_owned(),
            weight,
            resource,
            line: Some(line_no),
        });
    }
    Ok(rows)
}

/// Write rows tab-separated with shortest round-trip weight formatting.
pub fn write_edge_list(rows: &[EdgeRow], mut out: impl Write) -> std::io::Result<()> {
    for r in rows {
        write!(out, "{}\t{}\t{}", r.source, r.target, r.weight.unwrap_or(1.0))?;
        if let Some(res) = &r.resource {
            write!(out, "\t{res}")?;
        }
        writeln!(out)?;
    }
    Ok(())
}
