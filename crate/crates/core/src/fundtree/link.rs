use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::format::PresentationJson;
use crate::group::{Presentation, Word};

/// Peripheral data of one boundary surface, as words in the ambient group.
///
/// `longitudes[i]` is dual to `meridians[i]`; meridians beyond the
/// longitudes are extra normal generators of the same kernel.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeripheralComponent {
    pub id: u32,
    pub genus: u32,
    pub meridians: Vec<Word>,
    pub longitudes: Vec<Word>,
    pub label: String,
}

impl PeripheralComponent {
    /// Meridians followed by longitudes.
    pub fn peripheral_words(&self) -> impl Iterator<Item = &Word> {
        self.meridians.iter().chain(&self.longitudes)
    }
}

/// The exterior group of a handlebody link together with the peripheral
/// data of each component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HandlebodyLink {
    pub name: String,
    ambient: Presentation,
    components: Vec<PeripheralComponent>,
}

impl HandlebodyLink {
    pub fn new(name: impl Into<String>, ambient: Presentation, components: Vec<PeripheralComponent>) -> Result<Self> {
        let mut ids = HashSet::new();
        for c in &components {
            if !ids.insert(c.id) {
                return Err(Error::Invalid(format!("duplicate component id {}", c.id)));
            }
            if c.genus >= 1 && c.meridians.is_empty() {
                return Err(Error::Invalid(format!("component {} of genus {} has no meridian", c.id, c.genus)));
            }
            if c.longitudes.len() > c.genus as usize {
                return Err(Error::Invalid(format!(
                    "component {} has {} longitudes but genus {}",
                    c.id,
                    c.longitudes.len(),
                    c.genus
                )));
            }
            for w in c.peripheral_words() {
                ambient.check_word(w)?;
            }
        }
        Ok(HandlebodyLink {
            name: name.into(),
            ambient,
            components,
        })
    }

    pub fn ambient(&self) -> &Presentation {
        &self.ambient
    }

    pub fn components(&self) -> &[PeripheralComponent] {
        &self.components
    }

    pub fn component(&self, id: u32) -> Result<&PeripheralComponent> {
        self.components
            .iter()
            .find(|c| c.id == id)
            .ok_or_else(|| Error::Invalid(format!("link {} has no component {id}", self.name)))
    }

    pub fn component_index(&self, id: u32) -> Result<usize> {
        self.components
            .iter()
            .position(|c| c.id == id)
            .ok_or_else(|| Error::Invalid(format!("link {} has no component {id}", self.name)))
    }

    /// Replace the ambient presentation, carrying every peripheral word
    /// through `images` (old generator ↦ word in the new generators).
    pub fn rewritten(&self, ambient: Presentation, images: &[Word]) -> Result<HandlebodyLink> {
        let map = |ws: &[Word]| ws.iter().map(|w| w.substitute(images)).collect::<Vec<_>>();
        let components = self
            .components
            .iter()
            .map(|c| PeripheralComponent {
                meridians: map(&c.meridians),
                longitudes: map(&c.longitudes),
                ..c.clone()
            })
            .collect();
        HandlebodyLink::new(self.name.clone(), ambient, components)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&LinkJson::from(self)).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let j: LinkJson = serde_json::from_str(s)?;
        HandlebodyLink::try_from(j)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LinkJson {
    #[serde(default)]
    pub name: Option<String>,
    pub ambient: PresentationJson,
    pub components: Vec<ComponentJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComponentJson {
    pub id: u32,
    pub genus: u32,
    pub meridians: Vec<Vec<i64>>,
    #[serde(default)]
    pub longitudes: Vec<Vec<i64>>,
    #[serde(default)]
    pub label: Option<String>,
}

impl From<&HandlebodyLink> for LinkJson {
    fn from(l: &HandlebodyLink) -> Self {
        let signed = |ws: &[Word]| ws.iter().map(Word::to_signed).collect();
        LinkJson {
            name: Some(l.name.clone()),
            ambient: PresentationJson::from(&l.ambient),
            components: l
                .components
                .iter()
                .map(|c| ComponentJson {
                    id: c.id,
                    genus: c.genus,
                    meridians: signed(&c.meridians),
                    longitudes: signed(&c.longitudes),
                    label: Some(c.label.clone()),
                })
                .collect(),
        }
    }
}

impl TryFrom<LinkJson> for HandlebodyLink {
    type Error = Error;

    fn try_from(j: LinkJson) -> Result<Self> {
        let ambient = Presentation::try_from(j.ambient)?;
        let n = ambient.generator_count();
        let words = |ws: &[Vec<i64>]| ws.iter().map(|w| Word::from_signed(w, n)).collect::<Result<Vec<_>>>();
        let components = j
            .components
            .iter()
            .map(|c| {
                Ok(PeripheralComponent {
                    id: c.id,
                    genus: c.genus,
                    meridians: words(&c.meridians)?,
                    longitudes: words(&c.longitudes)?,
                    label: c.label.clone().unwrap_or_else(|| format!("Sigma{}", c.id)),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        HandlebodyLink::new(j.name.unwrap_or_else(|| "link".into()), ambient, components)
    }
}
