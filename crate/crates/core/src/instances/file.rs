//! JSON documents for instances and plans.
//!
//! ```json
//! {
//!   "version": 1,
//!   "supply": 4,
//!   "agents": [{"id": 1, "demand": 2, "name": "north"}, {"id": 2, "demand": 2}, {"id": 3, "demand": 2}],
//!   "edges": [["s", 1], [1, 2], ["s", 3]]
//! }
//! ```
//!
//! Agent ids are `1..=n`. Agents may carry a `value` (used by the knapsack
//! command) and the document may carry a default `epsilon`. Rational fields
//! are written as `"p/q"` strings; integers and decimals are accepted on input.

use std::collections::HashMap;
use std::fmt;

use serde::de::{self, Deserializer, Visitor};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{AllocationPlan, Configuration, Instance, Node};
use crate::ratio::{serde_rational, Rational};

pub const FORMAT_VERSION: u32 = 1;

/// Edge endpoint: the station `"s"` or an agent id.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Endpoint {
    Station,
    Agent(u64),
}

impl Serialize for Endpoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Endpoint::Station => s.serialize_str("s"),
            Endpoint::Agent(id) => s.serialize_u64(*id),
        }
    }
}

impl<'de> Deserialize<'de> for Endpoint {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct EndpointVisitor;
        impl Visitor<'_> for EndpointVisitor {
            type Value = Endpoint;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("\"s\" or a positive agent id")
            }

            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Endpoint, E> {
                if v == "s" {
                    Ok(Endpoint::Station)
                } else {
                    Err(E::invalid_value(de::Unexpected::Str(v), &self))
                }
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Endpoint, E> {
                Ok(Endpoint::Agent(v))
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Endpoint, E> {
                Err(E::invalid_value(de::Unexpected::Signed(v), &self))
            }
        }
        d.deserialize_any(EndpointVisitor)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AgentEntry {
    pub id: u64,
    pub demand: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "serde_rational::option")]
    pub value: Option<Rational>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub version: u32,
    pub supply: u64,
    pub agents: Vec<AgentEntry>,
    pub edges: Vec<(Endpoint, Endpoint)>,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "serde_rational::option")]
    pub epsilon: Option<Rational>,
}

/// A validated instance plus the optional per-agent extras of its file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceDoc {
    pub instance: Instance,
    pub names: Vec<Option<String>>,
    /// Knapsack item values, present for every agent or for none.
    pub values: Option<Vec<Rational>>,
    pub epsilon: Option<Rational>,
}

impl InstanceDoc {
    pub fn new(instance: Instance) -> Self {
        let n = instance.n();
        InstanceDoc { instance, names: vec![None; n], values: None, epsilon: None }
    }

    pub fn with_values(mut self, values: Vec<Rational>) -> Self {
        self.values = Some(values);
        self
    }
}

fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        Error::Parse { context: if path == "." { "document".into() } else { path }, source: e.into_inner() }
    })
}

pub fn parse_instance(text: &str) -> Result<InstanceDoc> {
    let file: InstanceFile = from_json(text)?;
    InstanceDoc::try_from(file)
}

impl TryFrom<InstanceFile> for InstanceDoc {
    type Error = Error;

    fn try_from(file: InstanceFile) -> Result<Self> {
        if file.version != FORMAT_VERSION {
            return Err(Error::input(format!("version: unsupported format version {}", file.version)));
        }
        let n = file.agents.len();
        let mut slot_of: HashMap<u64, usize> = HashMap::new();
        for (k, a) in file.agents.iter().enumerate() {
            if a.id == 0 || a.id > n as u64 {
                return Err(Error::input(format!("agents[{k}].id: id {} outside 1..={n}", a.id)));
            }
            if slot_of.insert(a.id, k).is_some() {
                return Err(Error::input(format!("agents[{k}].id: duplicate agent id {}", a.id)));
            }
            if a.demand == 0 {
                return Err(Error::input(format!("agents[{k}].demand: demand must be positive")));
            }
        }
        let mut demands = vec![0; n];
        let mut names = vec![None; n];
        let mut values = vec![None; n];
        for a in &file.agents {
            let i = (a.id - 1) as usize;
            demands[i] = a.demand;
            names[i] = a.name.clone();
            values[i] = a.value.clone();
        }
        let with_value = values.iter().filter(|v| v.is_some()).count();
        let values = match with_value {
            0 => None,
            k if k == n => Some(values.into_iter().map(|v| v.expect("all present")).collect()),
            _ => return Err(Error::input("agents[*].value: either every agent or no agent carries a value")),
        };
        let edges = file
            .edges
            .iter()
            .enumerate()
            .map(|(k, &(a, b))| {
                let node = |e: Endpoint| match e {
                    Endpoint::Station => Ok(Node::Station),
                    Endpoint::Agent(id) if id >= 1 && slot_of.contains_key(&id) => Ok(Node::Agent((id - 1) as usize)),
                    Endpoint::Agent(id) => Err(Error::input(format!("edges[{k}]: unknown agent id {id}"))),
                };
                Ok((node(a)?, node(b)?))
            })
            .collect::<Result<Vec<_>>>()?;
        let instance = Instance::new(demands, file.supply, edges)?;
        Ok(InstanceDoc { instance, names, values, epsilon: file.epsilon })
    }
}

impl From<&InstanceDoc> for InstanceFile {
    fn from(doc: &InstanceDoc) -> Self {
        let inst = &doc.instance;
        let endpoint = |n: Node| match n {
            Node::Station => Endpoint::Station,
            Node::Agent(i) => Endpoint::Agent(i as u64 + 1),
        };
        InstanceFile {
            version: FORMAT_VERSION,
            supply: inst.supply(),
            agents: (0..inst.n())
                .map(|i| AgentEntry {
                    id: i as u64 + 1,
                    demand: inst.demands()[i],
                    name: doc.names.get(i).cloned().flatten(),
                    value: doc.values.as_ref().map(|v| v[i].clone()),
                })
                .collect(),
            edges: inst.tree().edges().iter().map(|&(a, b)| (endpoint(a), endpoint(b))).collect(),
            epsilon: doc.epsilon.clone(),
        }
    }
}

pub fn serialize_instance(doc: &InstanceDoc) -> String {
    let mut s = serde_json::to_string_pretty(&InstanceFile::from(doc)).expect("instance documents always serialize");
    s.push('\n');
    s
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlanEntryFile {
    /// 1-based agent ids.
    pub members: Vec<u64>,
    #[serde(with = "serde_rational")]
    pub time: Rational,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlanFile {
    pub version: u32,
    pub entries: Vec<PlanEntryFile>,
}

pub fn plan_to_file(plan: &AllocationPlan) -> PlanFile {
    PlanFile {
        version: FORMAT_VERSION,
        entries: plan
            .entries
            .iter()
            .map(|e| PlanEntryFile {
                members: e.config.members().iter().map(|&i| i as u64 + 1).collect(),
                time: e.time.clone(),
            })
            .collect(),
    }
}

pub fn serialize_plan(plan: &AllocationPlan) -> String {
    let mut s = serde_json::to_string_pretty(&plan_to_file(plan)).expect("plans always serialize");
    s.push('\n');
    s
}

/// Member ids are not checked against an instance here; `verify_plan` does that.
pub fn parse_plan(text: &str) -> Result<AllocationPlan> {
    let file: PlanFile = from_json(text)?;
    if file.version != FORMAT_VERSION {
        return Err(Error::input(format!("version: unsupported format version {}", file.version)));
    }
    let entries = file
        .entries
        .into_iter()
        .enumerate()
        .map(|(k, e)| {
            if e.members.contains(&0) {
                return Err(Error::input(format!("entries[{k}].members: agent ids start at 1")));
            }
            Ok((Configuration::new(e.members.iter().map(|&id| (id - 1) as usize)), e.time))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(AllocationPlan::new(entries))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::{frac, int};

    const EXAMPLE: &str = r#"{
        "version": 1,
        "supply": 4,
        "agents": [{"id": 1, "demand": 2}, {"id": 2, "demand": 2}, {"id": 3, "demand": 2}],
        "edges": [["s", 1], [1, 2], ["s", 3]]
    }"#;

    #[test]
    fn parses_example() {
        let doc = parse_instance(EXAMPLE).unwrap();
        let expected = Instance::new(
            vec![2, 2, 2],
            4,
            vec![(Node::Station, Node::Agent(0)), (Node::Agent(0), Node::Agent(1)), (Node::Station, Node::Agent(2))],
        )
        .unwrap();
        assert_eq!(doc.instance, expected);
        assert_eq!(doc.values, None);
    }

    #[test]
    fn round_trip_preserves_document() {
        let text = r#"{"version":1,"supply":5,"agents":[{"id":2,"demand":2,"value":"10"},{"id":1,"demand":1,"name":"a","value":0.5},{"id":3,"demand":3,"value":"12/1"}],"edges":[["s",1],[1,2],["s",3]],"epsilon":"0.25"}"#;
        let doc = parse_instance(text).unwrap();
        assert_eq!(doc.values, Some(vec![frac(1, 2), int(10), int(12)]));
        assert_eq!(doc.epsilon, Some(frac(1, 4)));
        assert_eq!(doc.names[0].as_deref(), Some("a"));
        let again = parse_instance(&serialize_instance(&doc)).unwrap();
        assert_eq!(again, doc);
        let out: serde_json::Value = serde_json::from_str(&serialize_instance(&doc)).unwrap();
        assert_eq!(out["agents"][0]["value"], "1/2");
    }

    fn err(text: &str) -> String {
        parse_instance(text).unwrap_err().to_string()
    }

    #[test]
    fn rejects_cycle() {
        let e = err(
            r#"{"version":1,"supply":1,"agents":[{"id":1,"demand":1},{"id":2,"demand":1}],"edges":[["s",1],[1,2],[2,"s"]]}"#,
        );
        assert!(e.contains("not a tree"), "{e}");
    }

    #[test]
    fn rejects_duplicates_and_gaps() {
        let e = err(
            r#"{"version":1,"supply":1,"agents":[{"id":1,"demand":1},{"id":1,"demand":1}],"edges":[["s",1],["s",2]]}"#,
        );
        assert!(e.contains("duplicate agent id 1"), "{e}");
        let e = err(
            r#"{"version":1,"supply":1,"agents":[{"id":1,"demand":1},{"id":5,"demand":1}],"edges":[["s",1],["s",5]]}"#,
        );
        assert!(e.contains("agents[1].id"), "{e}");
    }

    #[test]
    fn negative_numbers_name_the_field() {
        let e = err(r#"{"version":1,"supply":1,
            "agents":[{"id":1,"demand":-2}],"edges":[["s",1]]}"#);
        assert!(e.contains("agents[0].demand"), "{e}");
        assert!(e.contains("line 2"), "{e}");
    }

    #[test]
    fn rejects_disconnected_and_unknown() {
        let e = err(r#"{"version":1,"supply":1,"agents":[{"id":1,"demand":1},{"id":2,"demand":1}],"edges":[["s",1]]}"#);
        assert!(e.contains("not a tree"), "{e}");
        let e = err(r#"{"version":1,"supply":1,"agents":[{"id":1,"demand":1}],"edges":[["s",4]]}"#);
        assert!(e.contains("unknown agent id 4"), "{e}");
        let e = err(r#"{"version":1,"supply":1,"agents":[{"id":1,"demand":1}],"edges":[["t",1]]}"#);
        assert!(e.contains("edges[0]"), "{e}");
    }

    #[test]
    fn partial_values_rejected() {
        let e = err(
            r#"{"version":1,"supply":1,"agents":[{"id":1,"demand":1,"value":1},{"id":2,"demand":1}],"edges":[["s",1],["s",2]]}"#,
        );
        assert!(e.contains("value"), "{e}");
    }

    #[test]
    fn plan_round_trip() {
        let plan =
            AllocationPlan::new([(Configuration::new([0, 1]), frac(1, 2)), (Configuration::new([0, 2]), frac(1, 2))]);
        let text = serialize_plan(&plan);
        assert!(text.contains("\"1/2\""));
        assert_eq!(parse_plan(&text).unwrap(), plan);
        assert!(parse_plan(r#"{"version":1,"entries":[{"members":[0],"time":"1"}]}"#).is_err());
        assert_eq!(
            parse_plan(r#"{"version":1,"entries":[{"members":[1],"time":0.9}]}"#).unwrap().total_time(),
            frac(9, 10)
        );
    }
}
