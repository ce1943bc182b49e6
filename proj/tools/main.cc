/* main.cc -- qsup command line tool */

#include "qsup/io.hh"

int main(int argc, char** argv) { return qsup::run_cli(argc, argv); }
