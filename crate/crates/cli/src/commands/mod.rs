pub mod biomech;
pub mod design;
pub mod simulate;
pub mod statics;
pub mod steer;
pub mod sweep;
