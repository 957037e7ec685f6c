//! JSON input documents and the embedded built-in objects.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use serde::de::{MapAccess, Visitor};
use serde::{Deserialize, Deserializer, Serialize};

use crate::error::{Error, Result};
use crate::ncpoly::{PresentationRecord, RewriteSystem};
use crate::orders::{OrderSpec, OrderSpecRecord};
use crate::toric::{ConePair, ConePairRecord};

pub const VERSION: &str = "1";
/// File name that refers to the embedded document.
pub const BUILTIN: &str = "builtin";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    pub version: String,
    #[serde(deserialize_with = "unique_keys")]
    pub objects: BTreeMap<String, ObjectRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ObjectRecord {
    Order(OrderSpecRecord),
    ConePair(ConePairRecord),
    Presentation(PresentationRecord),
}

fn unique_keys<'de, D, V>(d: D) -> std::result::Result<BTreeMap<String, V>, D::Error>
where
    D: Deserializer<'de>,
    V: Deserialize<'de>,
{
    struct Unique<V>(std::marker::PhantomData<V>);

    impl<'de, V: Deserialize<'de>> Visitor<'de> for Unique<V> {
        type Value = BTreeMap<String, V>;

        fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
            f.write_str("a map with unique object names")
        }

        fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> std::result::Result<Self::Value, A::Error> {
            let mut out = BTreeMap::new();
            while let Some((k, v)) = map.next_entry::<String, V>()? {
                if out.contains_key(&k) {
                    return Err(serde::de::Error::custom(format!("duplicate object name {k:?}")));
                }
                out.insert(k, v);
            }
            Ok(out)
        }
    }

    d.deserialize_map(Unique(std::marker::PhantomData))
}

/// A validated object.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InputObject {
    Order(OrderSpec),
    ConePair(ConePair),
    Presentation(RewriteSystem),
}

impl InputObject {
    pub fn kind(&self) -> &'static str {
        match self {
            InputObject::Order(_) => "order",
            InputObject::ConePair(_) => "cone_pair",
            InputObject::Presentation(_) => "presentation",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Input {
    pub version: String,
    pub objects: BTreeMap<String, InputObject>,
}

impl InputDocument {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }

    /// Validates every object.
    pub fn build(&self) -> Result<Input> {
        if self.version != VERSION {
            return Err(Error::Parse(format!("unsupported version {:?}, expected {VERSION:?}", self.version)));
        }
        let objects = self
            .objects
            .iter()
            .map(|(name, rec)| {
                let obj = match rec {
                    ObjectRecord::Order(r) => InputObject::Order(r.to_spec(name)?),
                    ObjectRecord::ConePair(r) => InputObject::ConePair(ConePair::try_from(r)?),
                    ObjectRecord::Presentation(r) => InputObject::Presentation(RewriteSystem::try_from(r)?),
                };
                Ok((name.clone(), obj))
            })
            .collect::<Result<_>>()
            .map_err(|e: Error| match e {
                Error::Parse(_) => e,
                other => Error::Parse(format!("invalid object: {other}")),
            })?;
        Ok(Input { version: self.version.clone(), objects })
    }
}

impl From<&Input> for InputDocument {
    fn from(input: &Input) -> Self {
        let objects = input
            .objects
            .iter()
            .map(|(name, obj)| {
                let rec = match obj {
                    InputObject::Order(o) => ObjectRecord::Order(o.into()),
                    InputObject::ConePair(p) => ObjectRecord::ConePair(p.into()),
                    InputObject::Presentation(rs) => ObjectRecord::Presentation(rs.into()),
                };
                (name.clone(), rec)
            })
            .collect();
        Self { version: input.version.clone(), objects }
    }
}

impl Input {
    pub fn get(&self, name: &str) -> Result<&InputObject> {
        self.objects
            .get(name)
            .ok_or_else(|| Error::InvalidArgument(format!("no object named {name:?}")))
    }

    /// The named object, or the only object of the requested kind when `name` is absent.
    pub fn select(&self, name: Option<&str>, kind: &str) -> Result<(&str, &InputObject)> {
        let (name, obj) = match name {
            Some(n) => (self.objects.get_key_value(n)).ok_or_else(|| {
                Error::InvalidArgument(format!("no object named {n:?}"))
            })?,
            None => {
                let mut it = self.objects.iter().filter(|(_, o)| o.kind() == kind);
                match (it.next(), it.next()) {
                    (Some(one), None) => one,
                    (None, _) => return Err(Error::InvalidArgument(format!("no {kind} object in the input"))),
                    _ => return Err(Error::InvalidArgument(format!("several {kind} objects; name one with FILE#name"))),
                }
            }
        };
        if obj.kind() != kind {
            return Err(Error::InvalidArgument(format!("object {name:?} is a {}, not a {kind}", obj.kind())));
        }
        Ok((name.as_str(), obj))
    }

    pub fn cone_pair(&self, name: Option<&str>) -> Result<&ConePair> {
        match self.select(name, "cone_pair")?.1 {
            InputObject::ConePair(p) => Ok(p),
            _ => unreachable!(),
        }
    }

    pub fn order(&self, name: Option<&str>) -> Result<&OrderSpec> {
        match self.select(name, "order")?.1 {
            InputObject::Order(o) => Ok(o),
            _ => unreachable!(),
        }
    }

    pub fn presentation(&self, name: Option<&str>) -> Result<&RewriteSystem> {
        match self.select(name, "presentation")?.1 {
            InputObject::Presentation(rs) => Ok(rs),
            _ => unreachable!(),
        }
    }
}

/// Reads and validates a file, or the built-in document for `builtin`.
pub fn load(path: &str) -> Result<Input> {
    if path == BUILTIN {
        return builtin_document().build();
    }
    let text = std::fs::read_to_string(Path::new(path))
        .map_err(|e| Error::InvalidArgument(format!("cannot read {path}: {e}")))?;
    InputDocument::from_json(&text)?.build()
}

/// Splits `FILE#name` into its parts.
pub fn split_reference(reference: &str) -> (&str, Option<&str>) {
    match reference.rsplit_once('#') {
        Some((file, name)) if !name.is_empty() => (file, Some(name)),
        Some((file, _)) => (file, None),
        None => (reference, None),
    }
}

const BUILTIN_JSON: &str = r#"{
  "version": "1",
  "objects": {
    "clifford": {
      "kind": "presentation",
      "generators": ["a", "b", "c"],
      "weights": [2, 2, 1],
      "relations": ["ca = -ac", "cb = -bc", "ba = ab - 2c^3"],
      "definitions": [
        {"name": "t", "value": "c^2"},
        {"name": "x", "value": "a^2"},
        {"name": "y", "value": "b^2"},
        {"name": "z", "value": "ab + ba"}
      ]
    },
    "clifford-order": {
      "kind": "order",
      "ramification": [{"prime": "B", "e": 2}]
    },
    "cyclic3": {
      "kind": "cone_pair",
      "lattice": [["1", "0"], ["1/3", "1/3"]],
      "rays": [[1, 0], [-1, 3]]
    },
    "francia-algebra": {
      "kind": "presentation",
      "generators": ["b", "c", "a", "d"],
      "relations": ["cb = bc", "ab = ba", "db = bd", "ac = ca", "dc = cd", "da = ad", "ad = bc"]
    },
    "francia-base": {
      "kind": "cone_pair",
      "lattice": [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1/2"]],
      "rays": [[0, 0, 1], [0, 1, 2], [1, 0, 2], [1, 1, 2]]
    },
    "francia-order": {
      "kind": "order",
      "ramification": [{"prime": "D1", "e": 2}]
    },
    "francia-pair": {
      "kind": "cone_pair",
      "lattice": [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1/2"]],
      "rays": [[0, 0, 1], [0, 1, 2], [1, 0, 2], [1, 1, 2]],
      "boundary": ["1/2", "0", "0", "0"]
    }
  }
}"#;

/// The embedded objects used by the case studies.
pub fn builtin_document() -> InputDocument {
    InputDocument::from_json(BUILTIN_JSON).expect("built-in document parses")
}
