#pragma once

#include <turb/chart.hpp>
#include <turb/classify.hpp>
#include <turb/compat.hpp>
#include <turb/convert.hpp>
#include <turb/envelope.hpp>
#include <turb/io.hpp>
#include <turb/isomorphism.hpp>
#include <turb/polyhedron.hpp>
#include <turb/surgery.hpp>
#include <turb/trails.hpp>
#include <turb/ample.hpp>
#include <turb/formats.hpp>
#include <turb/render.hpp>
