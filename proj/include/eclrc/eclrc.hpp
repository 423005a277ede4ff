#pragma once

#include "eclrc/artifact.hpp"
#include "eclrc/automorphisms.hpp"
#include "eclrc/curves.hpp"
#include "eclrc/errors.hpp"
#include "eclrc/fields.hpp"
#include "eclrc/function_field.hpp"
#include "eclrc/linalg.hpp"
#include "eclrc/lrc.hpp"
#include "eclrc/polynomials.hpp"
#include "eclrc/verify.hpp"
