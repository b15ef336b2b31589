//! Versioned on-disk document model and its conversions to the domain
//! types.  Documents are TOML by default; files ending in `.json` use the
//! same schema as JSON.  Unknown fields are rejected.

use serde::{Deserialize, Serialize};

use lefcalc::alf::{Alf, VanishingCycle};
use lefcalc::assembler::ClosedManifoldInput;
use lefcalc::harer::{BandTraversal, DoublePoint, LinkComponent, ProjectedLink};
use lefcalc::{KirbyData, OpenBook, SeifertForm, Sign, SignedTwist, Surface};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    pub schema_version: u32,
    pub kind: DocKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alf: Option<AlfDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub open_book: Option<OpenBookDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kirby: Option<KirbyDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub projected_link: Option<ProjectedLinkDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub closed_manifold: Option<ClosedManifoldDoc>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DocKind {
    Alf,
    OpenBook,
    Kirby,
    ProjectedLink,
    ClosedManifold,
}

impl DocKind {
    pub fn name(self) -> &'static str {
        match self {
            DocKind::Alf => "alf",
            DocKind::OpenBook => "open_book",
            DocKind::Kirby => "kirby",
            DocKind::ProjectedLink => "projected_link",
            DocKind::ClosedManifold => "closed_manifold",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceDoc {
    pub genus: u32,
    pub boundary: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CycleDoc {
    pub curve: Vec<i64>,
    pub sign: i64,
    #[serde(default)]
    pub rotation: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlfDoc {
    pub fiber: SurfaceDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seifert: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub cycles: Vec<CycleDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TwistDoc {
    pub curve: Vec<i64>,
    pub sign: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OpenBookDoc {
    pub page: SurfaceDoc,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub monodromy: Vec<TwistDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KirbyDoc {
    pub one_handles: usize,
    #[serde(default)]
    pub attach: Vec<Vec<i64>>,
    #[serde(default)]
    pub linking: Vec<Vec<i64>>,
    #[serde(default)]
    pub three_handles: usize,
    #[serde(default)]
    pub four_handles: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentDoc {
    /// Signed one-based handle indices: `2` passes positively over the
    /// second handle, `-1` negatively over the first.
    #[serde(default)]
    pub band_word: Vec<i64>,
    pub target_framing: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DoublePointDoc {
    pub first: [usize; 2],
    pub second: [usize; 2],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProjectedLinkDoc {
    pub one_handles: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bridge_number: Option<u32>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub components: Vec<ComponentDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub double_points: Vec<DoublePointDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClosedManifoldDoc {
    pub kirby: KirbyDoc,
    pub link: ProjectedLinkDoc,
}

/// A document-level problem: bad schema, bad section, bad field values.
#[derive(Debug)]
pub struct DocError(pub String);

impl std::fmt::Display for DocError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for DocError {}

impl From<lefcalc::Error> for DocError {
    fn from(e: lefcalc::Error) -> DocError {
        DocError(e.to_string())
    }
}

type DocResult<T> = Result<T, DocError>;

impl Document {
    pub fn validate(&self) -> DocResult<()> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(DocError(format!(
                "unsupported schema_version {} (expected {SCHEMA_VERSION})",
                self.schema_version
            )));
        }
        let sections = [
            ("alf", self.alf.is_some()),
            ("open_book", self.open_book.is_some()),
            ("kirby", self.kirby.is_some()),
            ("projected_link", self.projected_link.is_some()),
            ("closed_manifold", self.closed_manifold.is_some()),
        ];
        for (name, present) in sections {
            let expected = name == self.kind.name();
            if present != expected {
                return Err(DocError(if expected {
                    format!("kind is {name:?} but the [{name}] section is missing")
                } else {
                    format!(
                        "unexpected [{name}] section for kind {:?}",
                        self.kind.name()
                    )
                }));
            }
        }
        Ok(())
    }

    pub fn parse(text: &str, json: bool) -> DocResult<Document> {
        let doc: Document = if json {
            serde_json::from_str(text).map_err(|e| DocError(e.to_string()))?
        } else {
            toml::from_str(text).map_err(|e| DocError(e.to_string()))?
        };
        doc.validate()?;
        Ok(doc)
    }

    pub fn serialize(&self, json: bool) -> String {
        if json {
            serde_json::to_string_pretty(self).expect("documents serialize")
        } else {
            toml::to_string(self).expect("documents serialize")
        }
    }

    pub fn from_alf(alf: &Alf) -> Document {
        Document {
            schema_version: SCHEMA_VERSION,
            kind: DocKind::Alf,
            alf: Some(alf_doc(alf)),
            open_book: None,
            kirby: None,
            projected_link: None,
            closed_manifold: None,
        }
    }

    pub fn from_open_book(book: &OpenBook) -> Document {
        Document {
            schema_version: SCHEMA_VERSION,
            kind: DocKind::OpenBook,
            alf: None,
            open_book: Some(open_book_doc(book)),
            kirby: None,
            projected_link: None,
            closed_manifold: None,
        }
    }

    pub fn to_alf(&self) -> DocResult<Alf> {
        let doc = self.alf.as_ref().ok_or_else(|| {
            DocError(format!(
                "expected an alf document, got {:?}",
                self.kind.name()
            ))
        })?;
        build_alf(doc)
    }

    pub fn to_open_book(&self) -> DocResult<OpenBook> {
        let doc = self.open_book.as_ref().ok_or_else(|| {
            DocError(format!(
                "expected an open_book document, got {:?}",
                self.kind.name()
            ))
        })?;
        build_open_book(doc)
    }

    pub fn to_projected_link(&self) -> DocResult<ProjectedLink> {
        let doc = self.projected_link.as_ref().ok_or_else(|| {
            DocError(format!(
                "expected a projected_link document, got {:?}",
                self.kind.name()
            ))
        })?;
        build_projected_link(doc)
    }

    pub fn to_closed_manifold(&self) -> DocResult<ClosedManifoldInput> {
        let doc = self.closed_manifold.as_ref().ok_or_else(|| {
            DocError(format!(
                "expected a closed_manifold document, got {:?}",
                self.kind.name()
            ))
        })?;
        let kirby = build_kirby(&doc.kirby)?;
        let link = build_projected_link(&doc.link)?;
        Ok(ClosedManifoldInput::new(kirby, link)?)
    }
}

fn surface_of(doc: SurfaceDoc) -> Surface {
    Surface::new(doc.genus, doc.boundary)
}

fn build_alf(doc: &AlfDoc) -> DocResult<Alf> {
    let fiber = surface_of(doc.fiber);
    let cycles = doc
        .cycles
        .iter()
        .map(|c| {
            Ok(VanishingCycle::new(
                fiber.curve(c.curve.clone())?,
                Sign::from_i64(c.sign)?,
                c.rotation,
            ))
        })
        .collect::<Result<Vec<_>, lefcalc::Error>>()?;
    let seifert = match &doc.seifert {
        Some(matrix) => SeifertForm::new(fiber, matrix.clone())?,
        None => SeifertForm::default_for(fiber),
    };
    Ok(Alf::new(fiber, cycles, seifert)?)
}

fn alf_doc(alf: &Alf) -> AlfDoc {
    let seifert = if alf.seifert() == &SeifertForm::default_for(alf.fiber()) {
        None
    } else {
        Some(alf.seifert().matrix().clone())
    };
    AlfDoc {
        fiber: SurfaceDoc {
            genus: alf.fiber().genus(),
            boundary: alf.fiber().boundary_count(),
        },
        seifert,
        cycles: alf
            .cycles()
            .iter()
            .map(|c| CycleDoc {
                curve: c.curve().coeffs().to_vec(),
                sign: c.sign().as_i64(),
                rotation: c.rotation(),
            })
            .collect(),
    }
}

fn build_open_book(doc: &OpenBookDoc) -> DocResult<OpenBook> {
    let page = surface_of(doc.page);
    let monodromy = doc
        .monodromy
        .iter()
        .map(|t| {
            Ok(SignedTwist::new(
                page.curve(t.curve.clone())?,
                Sign::from_i64(t.sign)?,
            ))
        })
        .collect::<Result<Vec<_>, lefcalc::Error>>()?;
    Ok(OpenBook::new(page, monodromy)?)
}

fn open_book_doc(book: &OpenBook) -> OpenBookDoc {
    OpenBookDoc {
        page: SurfaceDoc {
            genus: book.page().genus(),
            boundary: book.page().boundary_count(),
        },
        monodromy: book
            .monodromy()
            .iter()
            .map(|t| TwistDoc {
                curve: t.curve().coeffs().to_vec(),
                sign: t.sign().as_i64(),
            })
            .collect(),
    }
}

fn build_kirby(doc: &KirbyDoc) -> DocResult<KirbyData> {
    Ok(KirbyData::new(
        doc.one_handles,
        doc.attach.clone(),
        doc.linking.clone(),
        doc.three_handles,
        doc.four_handles,
    )?)
}

fn build_projected_link(doc: &ProjectedLinkDoc) -> DocResult<ProjectedLink> {
    let components = doc
        .components
        .iter()
        .map(|c| {
            let band_word = c
                .band_word
                .iter()
                .map(|&v| {
                    if v == 0 {
                        return Err(DocError(
                            "band_word entries are signed one-based handle indices; 0 is invalid"
                                .into(),
                        ));
                    }
                    Ok(BandTraversal {
                        handle: v.unsigned_abs() as usize - 1,
                        sign: if v > 0 {
                            Sign::Positive
                        } else {
                            Sign::Negative
                        },
                    })
                })
                .collect::<DocResult<Vec<_>>>()?;
            Ok(LinkComponent {
                band_word,
                target_framing: c.target_framing,
            })
        })
        .collect::<DocResult<Vec<_>>>()?;
    let link = ProjectedLink {
        one_handles: doc.one_handles,
        components,
        double_points: doc
            .double_points
            .iter()
            .map(|d| DoublePoint {
                first: (d.first[0], d.first[1]),
                second: (d.second[0], d.second[1]),
            })
            .collect(),
        declared_bridge_number: doc.bridge_number,
    };
    link.validate()?;
    Ok(link)
}
