fn main() {
    std::process::exit(bobrvass::cli::run(std::env::args_os()));
}
