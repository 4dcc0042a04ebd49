//! Scenario files: one or two graph-product presentations plus task
//! parameters, as JSON.
//!
//! ```json
//! {
//!   "schema_version": 1,
//!   "source": {
//!     "name": "G",
//!     "graph": { "vertices": ["u", "v"], "edges": [] },
//!     "vertices": {
//!       "u": { "group": { "type": "cyclic", "n": 4 } },
//!       "v": { "group": { "type": "symmetric", "n": 3 }, "genset": "all" }
//!     }
//!   },
//!   "target": { ... },
//!   "family": [ { "vertex": "u", "map": "auto" } ],
//!   "task": { "radius": 3 }
//! }
//! ```

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use graphprod::word_engine::{full_genset, validate_genset, GensetError};
use graphprod::{FiniteGroup, GroupError, Presentation, SimplicialGraph, VertexFactor};
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Deserialize)]
pub struct ScenarioFile {
    pub schema_version: Option<u32>,
    pub source: PresentationSpec,
    #[serde(default)]
    pub target: Option<PresentationSpec>,
    #[serde(default)]
    pub family: Vec<FamilyEntry>,
    #[serde(default)]
    pub task: TaskSpec,
}

#[derive(Debug, Clone, Default, Deserialize)]
pub struct TaskSpec {
    pub radius: Option<u32>,
    pub dot: Option<PathBuf>,
    pub json: Option<PathBuf>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct PresentationSpec {
    #[serde(default)]
    pub name: Option<String>,
    pub graph: GraphSpec,
    pub vertices: BTreeMap<String, VertexSpec>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct GraphSpec {
    pub vertices: Vec<String>,
    #[serde(default)]
    pub edges: Vec<(String, String)>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct VertexSpec {
    pub group: GroupSpec,
    #[serde(default)]
    pub genset: GensetSpec,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum GroupSpec {
    Cyclic {
        n: usize,
        #[serde(default)]
        prefix: Option<String>,
    },
    Symmetric {
        n: usize,
        #[serde(default)]
        prefix: Option<String>,
    },
    Product {
        factors: Vec<GroupSpec>,
    },
    Table {
        identity: usize,
        table: Vec<Vec<usize>>,
        #[serde(default)]
        labels: Option<Vec<String>>,
    },
}

impl GroupSpec {
    pub fn build(&self) -> Result<FiniteGroup, GroupError> {
        match self {
            GroupSpec::Cyclic { n, prefix } => {
                FiniteGroup::cyclic_with_prefix(*n, prefix.as_deref().unwrap_or("a"))
            }
            GroupSpec::Symmetric { n, prefix } => FiniteGroup::symmetric_with(
                *n,
                prefix.as_deref().unwrap_or("b"),
                graphprod::finite_group::DEFAULT_SYMMETRIC_BOUND,
            ),
            GroupSpec::Product { factors } => {
                let groups = factors
                    .iter()
                    .map(GroupSpec::build)
                    .collect::<Result<Vec<_>, _>>()?;
                FiniteGroup::direct_product(&groups)
            }
            GroupSpec::Table {
                identity,
                table,
                labels,
            } => FiniteGroup::from_table(table.clone(), *identity, labels.clone()),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum GensetSpec {
    /// Only `"all"` is accepted.
    Keyword(String),
    Elements(Vec<ElementRef>),
}

impl Default for GensetSpec {
    fn default() -> Self {
        GensetSpec::Keyword("all".into())
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum ElementRef {
    Index(usize),
    Label(String),
}

#[derive(Debug, Clone, Deserialize)]
pub struct FamilyEntry {
    pub vertex: String,
    pub map: MapSpec,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum MapSpec {
    /// Only `"auto"` is accepted.
    Keyword(String),
    Images(Vec<usize>),
}

/// One validation finding, emitted as JSON.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub presentation: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vertex: Option<String>,
    pub message: String,
}

impl Diagnostic {
    fn new(kind: &'static str, message: impl Into<String>) -> Self {
        Diagnostic {
            kind,
            presentation: None,
            vertex: None,
            message: message.into(),
        }
    }

    fn at(mut self, presentation: &str, vertex: Option<&str>) -> Self {
        self.presentation = Some(presentation.to_string());
        self.vertex = vertex.map(str::to_string);
        self
    }
}

/// A scenario with its presentations built.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub source: Presentation,
    pub target: Option<Presentation>,
    /// Explicit vertex maps; vertices not listed are searched for.
    pub family: BTreeMap<String, Vec<usize>>,
    pub task: TaskSpec,
    /// Directory of the scenario file, for resolving relative task paths.
    pub base_dir: PathBuf,
}

impl Scenario {
    pub fn load(path: &Path) -> Result<Scenario, Vec<Diagnostic>> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            vec![Diagnostic::new(
                "Io",
                format!("cannot read {}: {e}", path.display()),
            )]
        })?;
        let base_dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Self::parse(&text, base_dir)
    }

    pub fn parse(text: &str, base_dir: PathBuf) -> Result<Scenario, Vec<Diagnostic>> {
        let file: ScenarioFile = serde_json::from_str(text)
            .map_err(|e| vec![Diagnostic::new("Parse", e.to_string())])?;
        let mut diags = Vec::new();
        match file.schema_version {
            Some(SCHEMA_VERSION) => {}
            Some(v) => diags.push(Diagnostic::new(
                "SchemaVersion",
                format!("unsupported schema_version {v}, expected {SCHEMA_VERSION}"),
            )),
            None => diags.push(Diagnostic::new("SchemaVersion", "missing schema_version")),
        }
        let source = build_presentation(&file.source, "G", &mut diags);
        let target = file
            .target
            .as_ref()
            .map(|t| build_presentation(t, "H", &mut diags));
        let mut family = BTreeMap::new();
        for entry in &file.family {
            match &entry.map {
                MapSpec::Keyword(k) if k == "auto" => {}
                MapSpec::Keyword(k) => diags.push(
                    Diagnostic::new(
                        "Family",
                        format!("unknown map keyword {k:?}, expected \"auto\""),
                    )
                    .at("family", Some(&entry.vertex)),
                ),
                MapSpec::Images(images) => {
                    if family
                        .insert(entry.vertex.clone(), images.clone())
                        .is_some()
                    {
                        diags.push(
                            Diagnostic::new("Family", "vertex listed twice")
                                .at("family", Some(&entry.vertex)),
                        );
                    }
                }
            }
        }
        if !diags.is_empty() {
            return Err(diags);
        }
        Ok(Scenario {
            source: source.expect("no diagnostics"),
            target: target.map(|t| t.expect("no diagnostics")),
            family,
            task: file.task,
            base_dir,
        })
    }

    pub fn resolve(&self, path: &Path) -> PathBuf {
        if path.is_absolute() {
            path.to_path_buf()
        } else {
            self.base_dir.join(path)
        }
    }
}

fn genset_kind(e: &GensetError) -> &'static str {
    match e {
        GensetError::ContainsIdentity => "GensetContainsIdentity",
        GensetError::SymmetryViolation { .. } => "SymmetryViolation",
        GensetError::NotGenerating { .. } => "NotGenerating",
        GensetError::BadElementIndex(_) => "BadElementIndex",
    }
}

fn group_kind(e: &GroupError) -> &'static str {
    match e {
        GroupError::MalformedTable(_) => "MalformedTable",
        GroupError::NoIdentity(_) => "NoIdentity",
        GroupError::NoInverse(_) => "NoInverse",
        GroupError::NotAssociative(..) => "NotAssociative",
        GroupError::ZeroOrder => "ZeroOrder",
        GroupError::TooLarge { .. } => "TooLarge",
        GroupError::EmptyFactorList => "EmptyFactorList",
        GroupError::ForeignElement => "ForeignElement",
    }
}

/// Builds one presentation, pushing every problem found onto `diags`.
fn build_presentation(
    spec: &PresentationSpec,
    default_name: &str,
    diags: &mut Vec<Diagnostic>,
) -> Option<Presentation> {
    let name = spec
        .name
        .clone()
        .unwrap_or_else(|| default_name.to_string());
    let before = diags.len();
    let graph = match SimplicialGraph::new(spec.graph.vertices.clone(), spec.graph.edges.clone()) {
        Ok(g) => Some(g),
        Err(e) => {
            let kind = match e {
                graphprod::GraphError::DuplicateVertex(_) => "DuplicateVertex",
                graphprod::GraphError::UnknownEndpoint(_) => "UnknownEndpoint",
                graphprod::GraphError::LoopEdge(_) => "LoopEdge",
            };
            diags.push(Diagnostic::new(kind, e.to_string()).at(&name, None));
            None
        }
    };
    for v in spec.vertices.keys() {
        if !spec.graph.vertices.contains(v) {
            diags.push(
                Diagnostic::new(
                    "UnknownVertex",
                    "vertex group given for a vertex not in the graph",
                )
                .at(&name, Some(v)),
            );
        }
    }
    let mut factors = Vec::new();
    for v in &spec.graph.vertices {
        let Some(vs) = spec.vertices.get(v) else {
            diags.push(Diagnostic::new("MissingVertex", "vertex has no group").at(&name, Some(v)));
            continue;
        };
        let group = match vs.group.build() {
            Ok(g) => g,
            Err(e) => {
                diags.push(Diagnostic::new(group_kind(&e), e.to_string()).at(&name, Some(v)));
                continue;
            }
        };
        let genset = match &vs.genset {
            GensetSpec::Keyword(k) if k == "all" => full_genset(&group),
            GensetSpec::Keyword(k) => {
                diags.push(
                    Diagnostic::new(
                        "Genset",
                        format!("unknown genset keyword {k:?}, expected \"all\""),
                    )
                    .at(&name, Some(v)),
                );
                continue;
            }
            GensetSpec::Elements(refs) => {
                let mut out = Vec::with_capacity(refs.len());
                let mut ok = true;
                for r in refs {
                    let idx = match r {
                        ElementRef::Index(i) => Some(*i),
                        ElementRef::Label(l) => group.index_of_label(l),
                    };
                    match idx {
                        Some(i) if i < group.order() => out.push(i),
                        _ => {
                            ok = false;
                            diags.push(
                                Diagnostic::new("UnknownElement", format!("no element {r:?}"))
                                    .at(&name, Some(v)),
                            );
                        }
                    }
                }
                if !ok {
                    continue;
                }
                out
            }
        };
        if let Err(e) = validate_genset(&group, &genset) {
            diags.push(Diagnostic::new(genset_kind(&e), e.to_string()).at(&name, Some(v)));
            continue;
        }
        factors.push((v.clone(), VertexFactor::new(group, genset)));
    }
    if diags.len() > before {
        return None;
    }
    match Presentation::new(name.clone(), graph?, factors) {
        Ok(p) => Some(p),
        Err(e) => {
            diags.push(Diagnostic::new("Presentation", e.to_string()).at(&name, None));
            None
        }
    }
}
