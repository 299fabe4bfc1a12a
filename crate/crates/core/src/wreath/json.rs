//! JSON element format.
//!
//! Level 1 elements are the two-entry image array (`[2,1]`, `[0,0]`, ...).
//! Higher levels are `{"a":[t1,t2],"children":{"1":...,"2":...}}` where
//! `children` holds exactly the branches in the domain of `a`.
//!
//! An element whose top label is empty carries no children and therefore no
//! level information; callers that know the level should pass it to
//! [`WreathElement::from_json_value`]. Without it the smallest consistent
//! level is used.

use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{json, Map, Value};

use super::WreathElement;
use crate::base_i2::I2Element;
use crate::error::{Error, Result};

impl WreathElement {
    pub fn to_json_value(&self) -> Value {
        let [t1, t2] = self.top().images();
        if self.level() == 1 {
            return json!([t1, t2]);
        }
        let mut children = Map::new();
        for y in self.top().domain() {
            children.insert(y.to_string(), self.child(y).unwrap().to_json_value());
        }
        json!({ "a": [t1, t2], "children": children })
    }

    pub fn to_json_string(&self) -> String {
        self.to_json_value().to_string()
    }

    /// Parses an element, reporting the JSON path of the first offending value.
    pub fn from_json_value(value: &Value, level: Option<u32>) -> Result<WreathElement> {
        let level = match level {
            Some(0) => return Err(Error::ZeroLevel),
            Some(l) => l,
            None => min_level(value),
        };
        build(value, level, "$")
    }

    pub fn from_json_str(text: &str, level: Option<u32>) -> Result<WreathElement> {
        let value: Value = serde_json::from_str(text).map_err(|e| Error::Parse {
            path: "$".into(),
            message: format!("invalid JSON: {e}"),
        })?;
        Self::from_json_value(&value, level)
    }
}

fn min_level(value: &Value) -> u32 {
    match value {
        Value::Object(obj) => {
            let deepest_child = obj
                .get("children")
                .and_then(Value::as_object)
                .map(|c| c.values().map(min_level).max().unwrap_or(0))
                .unwrap_or(0);
            (deepest_child + 1).max(2)
        }
        _ => 1,
    }
}

fn parse_err(path: &str, message: impl Into<String>) -> Error {
    Error::Parse { path: path.to_string(), message: message.into() }
}

fn parse_label(value: &Value, path: &str) -> Result<I2Element> {
    let arr = value
        .as_array()
        .ok_or_else(|| parse_err(path, format!("expected a two-entry array, found {value}")))?;
    if arr.len() != 2 {
        return Err(parse_err(path, format!("expected 2 entries, found {}", arr.len())));
    }
    let mut images = [0u8; 2];
    for (i, entry) in arr.iter().enumerate() {
        images[i] = match entry.as_u64() {
            Some(t @ 0..=2) => t as u8,
            _ => return Err(parse_err(&format!("{path}[{i}]"), format!("expected 0, 1 or 2, found {entry}"))),
        };
    }
    I2Element::new(images[0], images[1])
        .ok_or_else(|| parse_err(path, format!("[{},{}] is not injective", images[0], images[1])))
}

fn build(value: &Value, level: u32, path: &str) -> Result<WreathElement> {
    if level == 1 {
        if value.is_object() {
            return Err(parse_err(path, "level-1 element must be a two-entry array, found an object"));
        }
        return Ok(WreathElement::base(parse_label(value, path)?));
    }
    let obj = value
        .as_object()
        .ok_or_else(|| parse_err(path, format!("level-{level} element must be an object, found {value}")))?;
    if let Some(key) = obj.keys().find(|k| *k != "a" && *k != "children") {
        return Err(parse_err(&format!("{path}.{key}"), "unexpected key"));
    }
    let a_path = format!("{path}.a");
    let top = parse_label(obj.get("a").ok_or_else(|| parse_err(&a_path, "missing"))?, &a_path)?;
    let children_path = format!("{path}.children");
    let empty = Map::new();
    let children_obj = match obj.get("children") {
        Some(Value::Object(c)) => c,
        Some(other) => return Err(parse_err(&children_path, format!("expected an object, found {other}"))),
        None if top.domain_size() == 0 => &empty,
        None => return Err(parse_err(&children_path, "missing")),
    };
    if let Some(key) = children_obj.keys().find(|k| !matches!(k.as_str(), "1" | "2")) {
        return Err(parse_err(&format!("{children_path}.{key}"), "branch keys must be \"1\" or \"2\""));
    }
    let mut children: [Option<Arc<WreathElement>>; 2] = [None, None];
    for y in 1..=2u8 {
        let child_path = format!("{children_path}.{y}");
        match (top.in_domain(y), children_obj.get(&y.to_string())) {
            (true, Some(v)) => children[usize::from(y) - 1] = Some(Arc::new(build(v, level - 1, &child_path)?)),
            (true, None) => return Err(parse_err(&child_path, format!("missing child: branch {y} is in the domain of {top}"))),
            (false, Some(_)) => {
                return Err(parse_err(&child_path, format!("unexpected child: branch {y} is outside the domain of {top}")))
            }
            (false, None) => {}
        }
    }
    Ok(WreathElement::from_parts(level, top, children))
}

impl Serialize for WreathElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json_value().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for WreathElement {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let value = Value::deserialize(deserializer)?;
        WreathElement::from_json_value(&value, None).map_err(serde::de::Error::custom)
    }
}
