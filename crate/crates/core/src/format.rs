//! JSON spec documents: named groups, graphs, Π surfaces, Schreier surfaces, systems and queries.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::actions::{PushSystem, Shift};
use crate::constructions::{FreeHandle, embed_bs1n, embed_free, embed_indicable, embed_star, embed_wreath, Handle};
use crate::schreier::{FiniteGraph, GraphSpec};
use crate::surfaces::{Coverage, EndDescriptor, Genus, PiSpec, SchreierSurfaceSpec, SurfaceType};
use crate::words::{gen, Gen, GroupOracle, MultTable, SimpleGraph, WeightMap, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormatError {
    #[error("malformed spec: {0}")]
    Json(String),
    #[error("unknown {kind} `{name}`")]
    UnknownReference { kind: &'static str, name: String },
    #[error("{context}: {message}")]
    Invalid { context: String, message: String },
}

fn invalid(context: impl Into<String>, e: impl ToString) -> FormatError {
    FormatError::Invalid { context: context.into(), message: e.to_string() }
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GroupDoc {
    Free {
        rank: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        generators: Option<Vec<String>>,
    },
    FreeAbelian {
        rank: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        generators: Option<Vec<String>>,
    },
    Cyclic {
        order: u64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        generators: Option<Vec<String>>,
    },
    Bs1n {
        n: u32,
    },
    Raag {
        vertices: Vec<String>,
        #[serde(default)]
        edges: Vec<(String, String)>,
    },
    DirectProduct {
        factors: Vec<String>,
    },
    /// A finite group given by its multiplication table.
    Table {
        table: Vec<Vec<usize>>,
        identity: usize,
        generators: BTreeMap<String, usize>,
    },
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GraphDoc {
    Cayley { group: String },
    KernelCosets { group: String, weights: BTreeMap<String, i64> },
    Cycle { n: usize, letter: String },
    Line { letter: String },
    Cross { horizontal: String, vertical: String },
    Finite { vertices: Vec<String>, edges: Vec<(String, String, String)> },
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq, Default)]
#[serde(rename_all = "snake_case")]
pub enum EndsDoc {
    #[default]
    Empty,
    Finite(u64),
    OmegaPlusOne,
    ZTwoPoint,
    Cantor,
    Union(Vec<EndsDoc>),
}

impl EndsDoc {
    fn resolve(&self) -> EndDescriptor {
        match self {
            EndsDoc::Empty => EndDescriptor::empty(),
            EndsDoc::Finite(k) => EndDescriptor::Finite(*k),
            EndsDoc::OmegaPlusOne => EndDescriptor::OmegaPlusOne,
            EndsDoc::ZTwoPoint => EndDescriptor::ZTwoPoint,
            EndsDoc::Cantor => EndDescriptor::Cantor,
            EndsDoc::Union(parts) => parts.iter().fold(EndDescriptor::empty(), |acc, p| acc.union(&p.resolve())),
        }
    }
}

#[derive(Serialize, Deserialize, Clone, Copy, Debug, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum InfiniteTag {
    Infinite,
}

/// A count, or the string `"infinite"`.
#[derive(Serialize, Deserialize, Clone, Copy, Debug, PartialEq, Eq)]
#[serde(untagged)]
pub enum GenusDoc {
    Count(u64),
    Infinite(InfiniteTag),
}

impl GenusDoc {
    fn resolve(self) -> Genus {
        match self {
            GenusDoc::Count(g) => Genus::Finite(g),
            GenusDoc::Infinite(_) => Genus::Infinite,
        }
    }
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct PiDoc {
    pub genus: GenusDoc,
    #[serde(default)]
    pub nonplanar_ends: EndsDoc,
    #[serde(default)]
    pub ends: EndsDoc,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct SurfaceTypeDoc {
    pub genus: GenusDoc,
    #[serde(default)]
    pub boundary: u64,
    #[serde(default)]
    pub nonplanar_ends: EndsDoc,
    #[serde(default)]
    pub ends: EndsDoc,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct OmegaDoc {
    pub node: String,
    pub surface: SurfaceTypeDoc,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct SurfaceDoc {
    pub graph: String,
    pub pi: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub omegas: Vec<OmegaDoc>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct FactorDoc {
    pub group: String,
    pub weights: BTreeMap<String, i64>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum ShiftDoc {
    /// ℤ acting on ℤ, with the given letter.
    Z(String),
    Push {
        surface: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        letters: Option<Vec<String>>,
    },
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SystemDoc {
    Free {
        surface: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        letters: Option<Vec<String>>,
        /// `(letter, node)` pairs.
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        omissions: Vec<(String, String)>,
    },
    Indicable {
        group: String,
        weights: BTreeMap<String, i64>,
        surface: String,
        #[serde(default)]
        omissions: usize,
    },
    Star {
        factors: Vec<FactorDoc>,
        surface: String,
    },
    Wreath {
        lamp: String,
        shift: ShiftDoc,
    },
    Bs1n {
        n: u32,
        #[serde(default = "default_depth")]
        depth: usize,
    },
    #[serde(rename = "explicit-push")]
    ExplicitPush {
        surface: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        letters: Option<Vec<String>>,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        omissions: Vec<(String, String)>,
    },
}

fn default_depth() -> usize {
    8
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum QueryDoc {
    Eval {
        system: String,
        words: Vec<String>,
    },
    Probe {
        system: String,
        claimed: String,
        radius: usize,
    },
    Certify {
        surface: String,
        m: usize,
        n: usize,
        /// Restrict the domain to one letter's orbit; all vertices otherwise.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        orbit: Option<String>,
    },
    Classify {
        surface: String,
    },
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq, Default)]
#[serde(deny_unknown_fields)]
pub struct SpecDocument {
    #[serde(default)]
    pub groups: BTreeMap<String, GroupDoc>,
    #[serde(default)]
    pub graphs: BTreeMap<String, GraphDoc>,
    #[serde(default)]
    pub pis: BTreeMap<String, PiDoc>,
    #[serde(default)]
    pub surfaces: BTreeMap<String, SurfaceDoc>,
    #[serde(default)]
    pub systems: BTreeMap<String, SystemDoc>,
    #[serde(default)]
    pub queries: Vec<QueryDoc>,
}

fn lookup<'a, T>(map: &'a BTreeMap<String, T>, kind: &'static str, name: &str) -> Result<&'a T, FormatError> {
    map.get(name).ok_or_else(|| FormatError::UnknownReference { kind, name: name.to_string() })
}

fn gens(names: &[String]) -> Vec<Gen> {
    names.iter().map(|s| gen(s)).collect()
}

fn weights(map: &BTreeMap<String, i64>) -> WeightMap {
    WeightMap::from_pairs(map.iter().map(|(k, v)| (k.as_str(), *v)))
}

pub fn parse_word(text: &str) -> Result<Word, FormatError> {
    text.parse().map_err(|e| invalid(format!("word `{text}`"), e))
}

impl SpecDocument {
    /// Parses and resolves every cross-reference.
    pub fn from_json(text: &str) -> Result<Self, FormatError> {
        let doc: SpecDocument = serde_json::from_str(text).map_err(|e| FormatError::Json(e.to_string()))?;
        doc.validate()?;
        Ok(doc)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec documents serialize")
    }

    pub fn validate(&self) -> Result<(), FormatError> {
        for name in self.groups.keys() {
            self.group(name)?;
        }
        for name in self.graphs.keys() {
            self.graph(name)?;
        }
        for name in self.pis.keys() {
            self.pi(name)?;
        }
        for name in self.surfaces.keys() {
            self.surface(name)?;
        }
        for name in self.systems.keys() {
            self.system(name)?;
        }
        for q in &self.queries {
            match q {
                QueryDoc::Eval { system, words } => {
                    self.system(system)?;
                    for w in words {
                        parse_word(w)?;
                    }
                }
                QueryDoc::Probe { system, claimed, .. } => {
                    self.system(system)?;
                    self.group(claimed)?;
                }
                QueryDoc::Certify { surface, .. } | QueryDoc::Classify { surface } => {
                    self.surface(surface)?;
                }
            }
        }
        Ok(())
    }

    pub fn group(&self, name: &str) -> Result<GroupOracle, FormatError> {
        self.group_at(name, 0)
    }

    fn group_at(&self, name: &str, depth: usize) -> Result<GroupOracle, FormatError> {
        if depth > self.groups.len() {
            return Err(invalid(format!("group {name}"), "cyclic direct-product reference"));
        }
        let ctx = || format!("group {name}");
        let rename = |o: GroupOracle, names: &Option<Vec<String>>| match names {
            Some(n) => o.with_generators(gens(n)).map_err(|e| invalid(ctx(), e)),
            None => Ok(o),
        };
        match lookup(&self.groups, "group", name)? {
            GroupDoc::Free { rank, generators } => rename(GroupOracle::free(*rank), generators),
            GroupDoc::FreeAbelian { rank, generators } => rename(GroupOracle::free_abelian(*rank), generators),
            GroupDoc::Cyclic { order, generators } => {
                if *order == 0 {
                    return Err(invalid(ctx(), "order must be positive"));
                }
                rename(GroupOracle::cyclic(*order), generators)
            }
            GroupDoc::Bs1n { n } => {
                if *n < 2 {
                    return Err(invalid(ctx(), "BS(1,n) needs n >= 2"));
                }
                Ok(GroupOracle::bs1n(*n))
            }
            GroupDoc::Raag { vertices, edges } => {
                let g = SimpleGraph::new(gens(vertices), edges.iter().map(|(u, v)| (gen(u), gen(v))))
                    .map_err(|e| invalid(ctx(), e))?;
                Ok(GroupOracle::raag(g))
            }
            GroupDoc::DirectProduct { factors } => {
                let parts = factors.iter().map(|f| self.group_at(f, depth + 1)).collect::<Result<Vec<_>, _>>()?;
                GroupOracle::direct_product(parts).map_err(|e| invalid(ctx(), e))
            }
            GroupDoc::Table { table, identity, generators } => {
                let images = generators.iter().map(|(g, x)| (gen(g), *x)).collect();
                let t = MultTable::new(table.clone(), *identity, images).map_err(|e| invalid(ctx(), e))?;
                Ok(GroupOracle::opaque(t))
            }
        }
    }

    pub fn graph(&self, name: &str) -> Result<GraphSpec, FormatError> {
        let ctx = || format!("graph {name}");
        Ok(match lookup(&self.graphs, "graph", name)? {
            GraphDoc::Cayley { group } => GraphSpec::cayley(self.group(group)?),
            GraphDoc::KernelCosets { group, weights: w } => {
                GraphSpec::kernel_cosets(self.group(group)?, weights(w)).map_err(|e| invalid(ctx(), e))?
            }
            GraphDoc::Cycle { n, letter } => {
                if *n == 0 {
                    return Err(invalid(ctx(), "a cycle needs at least one vertex"));
                }
                GraphSpec::cycle(*n, letter)
            }
            GraphDoc::Line { letter } => GraphSpec::line(letter),
            GraphDoc::Cross { horizontal, vertical } => {
                if horizontal == vertical {
                    return Err(invalid(ctx(), "the two axes need distinct letters"));
                }
                GraphSpec::cross(horizontal, vertical)
            }
            GraphDoc::Finite { vertices, edges } => {
                let edges = edges.iter().map(|(a, s, b)| (gen(a), gen(s), gen(b))).collect();
                GraphSpec::FiniteExplicit(FiniteGraph::new(gens(vertices), edges).map_err(|e| invalid(ctx(), e))?)
            }
        })
    }

    pub fn pi(&self, name: &str) -> Result<PiSpec, FormatError> {
        let d = lookup(&self.pis, "pi", name)?;
        PiSpec::new(d.genus.resolve(), d.nonplanar_ends.resolve(), d.ends.resolve())
            .map_err(|e| invalid(format!("pi {name}"), e))
    }

    pub fn surface(&self, name: &str) -> Result<SchreierSurfaceSpec, FormatError> {
        let d = lookup(&self.surfaces, "surface", name)?;
        let graph = self.graph(&d.graph)?;
        let mut spec = SchreierSurfaceSpec::new(graph, self.pi(&d.pi)?);
        for o in &d.omegas {
            let ctx = || format!("surface {name}");
            let node = spec.graph.parse_node(&o.node).map_err(|e| invalid(ctx(), e))?;
            let s = &o.surface;
            let omega = SurfaceType {
                genus: s.genus.resolve(),
                boundary: s.boundary,
                nonplanar_ends: s.nonplanar_ends.resolve(),
                ends: s.ends.resolve(),
            };
            spec = spec.with_omega(node, omega).map_err(|e| invalid(ctx(), e))?;
        }
        Ok(spec)
    }

    fn push_system(
        &self,
        ctx: &str,
        surface: &str,
        letters: &Option<Vec<String>>,
        omissions: &[(String, String)],
        multipush: bool,
    ) -> Result<PushSystem, FormatError> {
        let spec = self.surface(surface)?;
        let letters = letters.as_ref().map(|l| gens(l)).unwrap_or_else(|| spec.graph.letters());
        let mut parsed = Vec::new();
        for (s, v) in omissions {
            parsed.push((gen(s), spec.graph.parse_node(v).map_err(|e| invalid(ctx, e))?));
        }
        let mut sys = if multipush {
            PushSystem::multipush(spec, letters)
        } else {
            PushSystem::explicit(spec, letters)
        }
        .map_err(|e| invalid(ctx, e))?;
        for (s, v) in parsed {
            sys = sys.omit(&s, v).map_err(|e| invalid(ctx, e))?;
        }
        Ok(sys)
    }

    pub fn system(&self, name: &str) -> Result<Handle, FormatError> {
        let ctx = format!("system {name}");
        let c = ctx.as_str();
        Ok(match lookup(&self.systems, "system", name)? {
            SystemDoc::Free { surface, letters, omissions } => {
                let sys = self.push_system(c, surface, letters, omissions, true)?;
                embed_free(sys.surface().clone(), sys.letters().to_vec()).map_err(|e| invalid(c, e))?;
                Handle::Free(FreeHandle { system: sys })
            }
            SystemDoc::Indicable { group, weights: w, surface, omissions } => Handle::Indicable(
                embed_indicable(self.group(group)?, weights(w), self.surface(surface)?, *omissions)
                    .map_err(|e| invalid(c, e))?,
            ),
            SystemDoc::Star { factors, surface } => {
                let factors = factors
                    .iter()
                    .map(|f| Ok((self.group(&f.group)?, weights(&f.weights))))
                    .collect::<Result<Vec<_>, FormatError>>()?;
                Handle::Star(embed_star(factors, self.surface(surface)?).map_err(|e| invalid(c, e))?)
            }
            SystemDoc::Wreath { lamp, shift } => {
                let shift = match shift {
                    ShiftDoc::Z(letter) => Shift::Z { letter: gen(letter) },
                    ShiftDoc::Push { surface, letters } => {
                        let schreier = self.surface(surface)?.graph.is_schreier();
                        Shift::Push(self.push_system(c, surface, letters, &[], schreier)?)
                    }
                };
                Handle::Wreath(embed_wreath(self.group(lamp)?, shift).map_err(|e| invalid(c, e))?)
            }
            SystemDoc::Bs1n { n, depth } => Handle::Bs(embed_bs1n(*n, *depth).map_err(|e| invalid(c, e))?),
            SystemDoc::ExplicitPush { surface, letters, omissions } => {
                Handle::Push(self.push_system(c, surface, letters, omissions, false)?)
            }
        })
    }

    pub fn coverage(&self, surface: &str, orbit: &Option<String>) -> Result<Coverage, FormatError> {
        let spec = self.surface(surface)?;
        Ok(match orbit {
            None => Coverage::AllVertices,
            Some(s) if spec.graph.has_letter(s) => Coverage::Orbit(gen(s)),
            Some(s) => return Err(invalid(format!("surface {surface}"), format!("no letter {s}"))),
        })
    }
}
