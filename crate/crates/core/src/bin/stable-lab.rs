fn main() {
    std::process::exit(stable_lab::cli::run(std::env::args_os()));
}
