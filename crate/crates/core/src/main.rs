fn main() {
    std::process::exit(polarfermi::cli::run(std::env::args_os()));
}
