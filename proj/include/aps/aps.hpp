#pragma once

#include <aps/dirac.hpp>
#include <aps/dynamics.hpp>
#include <aps/error.hpp>
#include <aps/fermion.hpp>
#include <aps/identity_checks.hpp>
#include <aps/matrix_rep.hpp>
#include <aps/multivector.hpp>
#include <aps/random.hpp>
#include <aps/spacetime.hpp>
#include <aps/spin_states.hpp>
#include <aps/stern_gerlach.hpp>
#include <aps/vec3.hpp>
