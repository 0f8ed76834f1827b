fn main() -> std::process::ExitCode {
    fatgraph_core::cli::main()
}
