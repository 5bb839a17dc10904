fn main() {
    std::process::exit(theta_bounds_cli::run(std::env::args_os()));
}
