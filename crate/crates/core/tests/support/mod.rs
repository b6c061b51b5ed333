pub mod kernel_props;
