fn main() {
    std::process::exit(extremal_lab::cli::run_from(std::env::args_os()));
}
