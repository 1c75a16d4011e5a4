//! Diagrams of links and spatial graphs and their Wirtinger presentations.

mod code;
mod wirtinger;

pub use code::{
    parse_diagram, validate_against_link, Arc, Crossing, DiagramCode, DiagramComponent, Endpoint, GenusCheck,
    ValidationReport, Vertex, VertexEnd,
};
pub use wirtinger::{diagram_to_link, render_with_peripherals, wirtinger, ExtractedComponent, PeripheralExtraction};
