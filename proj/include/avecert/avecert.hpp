#ifndef AVECERT_AVECERT_HPP
#define AVECERT_AVECERT_HPP

#include "avecert/ave_problem.hpp"
#include "avecert/conditions.hpp"
#include "avecert/ensemble.hpp"
#include "avecert/matrix.hpp"
#include "avecert/oracle.hpp"
#include "avecert/problem_io.hpp"
#include "avecert/solvers.hpp"
#include "avecert/svd.hpp"

#endif // AVECERT_AVECERT_HPP
